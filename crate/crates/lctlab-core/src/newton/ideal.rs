use std::fmt;

use crate::error::{check_dim, Error, Result};
use crate::ratlp::Rational;

/// Exponent `u` of the monomial `x^u`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("exponent vector needs at least one coordinate"));
        }
        Ok(Self(coords))
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    /// The `i`-th unit vector, the exponent of `x_i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = vec![0; n];
        c[i] = 1;
        Self(c)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// Total degree.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&c| u64::from(c)).sum()
    }

    /// Componentwise `≤`, i.e. `x^self` divides `x^other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Self {
        Self(self.0.iter().map(|a| a * k).collect())
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.0.iter().map(|&c| Rational::from_integer(c.into())).collect()
    }

    /// `u + e` with `e = (1,…,1)`.
    pub fn shifted(&self) -> Vec<Rational> {
        self.0
            .iter()
            .map(|&c| Rational::from_integer((u64::from(c) + 1).into()))
            .collect()
    }
}

impl From<Vec<u32>> for ExponentVector {
    /// Panics on an empty vector; use [`ExponentVector::new`] for untrusted data.
    fn from(v: Vec<u32>) -> Self {
        Self::new(v).expect("nonempty exponent vector")
    }
}

/// Monomial ideal stored by its minimal generators, sorted.
///
/// An empty generator list is the zero ideal. The unit ideal is generated by
/// the zero exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<ExponentVector>,
}

/// Componentwise-minimal elements of `points`. An empty input gives the zero ideal.
pub fn minimal_generators(nvars: usize, points: impl IntoIterator<Item = ExponentVector>) -> Result<MonomialIdeal> {
    let mut pts: Vec<ExponentVector> = points.into_iter().collect();
    for p in &pts {
        check_dim(nvars, p.dim())?;
    }
    Ok(MonomialIdeal::from_points_unchecked(nvars, &mut pts))
}

impl MonomialIdeal {
    /// Minimalizes arbitrary generators.
    pub fn new(nvars: usize, gens: Vec<ExponentVector>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::invalid("ideal in zero variables"));
        }
        minimal_generators(nvars, gens)
    }

    /// Builds from raw exponent lists, e.g. `&[&[2, 0], &[0, 3]]` for `(x², y³)`.
    pub fn from_exponents(nvars: usize, gens: &[&[u32]]) -> Result<Self> {
        let gens = gens
            .iter()
            .map(|g| ExponentVector::new(g.to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nvars, gens)
    }

    fn from_points_unchecked(nvars: usize, pts: &mut [ExponentVector]) -> Self {
        pts.sort_unstable();
        let mut gens: Vec<ExponentVector> = Vec::new();
        for p in pts.iter() {
            // Lexicographic order puts every divisor of p before p.
            if !gens.iter().any(|g| g.divides(p)) {
                gens.push(p.clone());
            }
        }
        Self { nvars, gens }
    }

    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        Self {
            nvars,
            gens: vec![ExponentVector::zero(nvars)],
        }
    }

    /// The maximal ideal `m = (x_1, …, x_n)` of the origin.
    pub fn maximal(nvars: usize) -> Self {
        let mut gens: Vec<_> = (0..nvars).map(|i| ExponentVector::unit(nvars, i)).collect();
        gens.sort_unstable();
        Self { nvars, gens }
    }

    /// `m^k`, generated by all monomials of degree `k`.
    pub fn maximal_power(nvars: usize, k: u32) -> Self {
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(ExponentVector(cur.clone()));
                return;
            }
            for c in 0..=left {
                cur[i] = c;
                rec(i + 1, left - c, cur, out);
            }
        }
        let mut out = Vec::new();
        rec(0, k, &mut vec![0; nvars], &mut out);
        out.sort_unstable();
        Self { nvars, gens: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].degree() == 0
    }

    /// Whether `x^u` lies in the ideal.
    pub fn contains_monomial(&self, u: &ExponentVector) -> bool {
        self.gens.iter().any(|g| g.divides(u))
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        check_dim(self.nvars, other.nvars)?;
        Ok(other.gens.iter().all(|g| self.contains_monomial(g)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let mut pts: Vec<_> = self.gens.iter().chain(&other.gens).cloned().collect();
        Ok(Self::from_points_unchecked(self.nvars, &mut pts))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        check_dim(self.nvars, other.nvars)?;
        let mut pts: Vec<_> = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.add(b)))
            .collect();
        Ok(Self::from_points_unchecked(self.nvars, &mut pts))
    }

    /// `self^k`, with `self^0` the unit ideal.
    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::unit(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.product(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base).expect("same ring");
            }
        }
        result
    }

    /// Order of vanishing at the origin, `+∞` as `None` for the zero ideal.
    pub fn ord0(&self) -> Option<u64> {
        self.gens.iter().map(ExponentVector::degree).min()
    }

    /// Largest coordinate over all generators.
    pub fn max_exponent(&self) -> u32 {
        self.gens
            .iter()
            .flat_map(|g| g.0.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Restriction to the hyperplane `x_n = 0`: generators free of `x_n`, with
    /// the last coordinate dropped.
    pub fn restrict_last(&self) -> Result<Self> {
        if self.nvars < 2 {
            return Err(Error::invalid("restriction needs at least two variables"));
        }
        let n = self.nvars - 1;
        let mut pts: Vec<_> = self
            .gens
            .iter()
            .filter(|g| g.0[n] == 0)
            .map(|g| ExponentVector(g.0[..n].to_vec()))
            .collect();
        Ok(Self::from_points_unchecked(n, &mut pts))
    }

    /// `x^u · self`.
    pub fn shift(&self, u: &ExponentVector) -> Self {
        let mut pts: Vec<_> = self.gens.iter().map(|g| g.add(u)).collect();
        Self::from_points_unchecked(self.nvars, &mut pts)
    }

    /// Renders with the given variable names, e.g. `(x^2, y^3)`.
    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "(0)".into();
        }
        let parts: Vec<String> = self
            .gens
            .iter()
            .map(|g| monomial_string(g, names))
            .collect();
        format!("({})", parts.join(", "))
    }
}

/// Default names: `x, y, z` up to three variables, `x1, …, xn` beyond.
pub fn default_var_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

fn monomial_string(u: &ExponentVector, names: &[String]) -> String {
    let factors: Vec<String> = u
        .0
        .iter()
        .zip(names)
        .filter(|(&c, _)| c > 0)
        .map(|(&c, name)| if c == 1 { name.clone() } else { format!("{name}^{c}") })
        .collect();
    if factors.is_empty() {
        "1".into()
    } else {
        factors.join("*")
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&default_var_names(self.nvars)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(gens: &[&[u32]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(gens[0].len(), gens).unwrap()
    }

    #[test]
    fn minimalization() {
        let a = ideal(&[&[2, 0], &[3, 1], &[0, 3]]);
        assert_eq!(a, ideal(&[&[2, 0], &[0, 3]]));
        assert!(ideal(&[&[0, 0]]).is_unit());
        assert_eq!(ideal(&[&[2, 1], &[1, 2]]).generators().len(), 2);
        assert!(minimal_generators(2, Vec::new()).unwrap().is_zero());
    }

    #[test]
    fn semiring_examples() {
        let x2 = ideal(&[&[2, 0]]);
        let y3 = ideal(&[&[0, 3]]);
        assert_eq!(x2.product(&y3).unwrap(), ideal(&[&[2, 3]]));
        let a = ideal(&[&[2, 0], &[0, 3]]);
        let m4 = MonomialIdeal::maximal_power(2, 4);
        assert_eq!(m4.generators().len(), 5);
        assert_eq!(a.sum(&m4).unwrap(), a);
        assert!(ideal(&[&[1]]).contains(&ideal(&[&[2]])).unwrap());
        assert!(!ideal(&[&[2]]).contains(&ideal(&[&[1]])).unwrap());
        assert!(x2.sum(&ideal(&[&[1]])).is_err());
    }

    #[test]
    fn powers_and_display() {
        let m = MonomialIdeal::maximal(2);
        assert_eq!(m.pow(2), MonomialIdeal::maximal_power(2, 2));
        assert_eq!(m.pow(0), MonomialIdeal::unit(2));
        assert_eq!(ideal(&[&[2, 0], &[0, 3]]).to_string(), "(y^3, x^2)");
        assert_eq!(MonomialIdeal::zero(2).to_string(), "(0)");
        assert_eq!(ideal(&[&[2, 0], &[1, 1], &[0, 3]]).ord0(), Some(2));
    }

    #[test]
    fn restriction() {
        let a = ideal(&[&[2, 0], &[0, 3]]);
        assert_eq!(a.restrict_last().unwrap(), ideal(&[&[2]]));
    }
}
