use num_traits::{Signed, Zero};

use super::{MonomialIdeal, NewtonRegion, Polyhedron, Precision, Tagged};
use crate::error::{check_dim, Error, Result};
use crate::ratlp::Rational;

/// Finite prefix `a_1, …, a_k` completed to the smallest graded sequence
/// containing it: `a_m = prefix_m + Σ_{0<i<m} a_i·a_{m−i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSequence {
    nvars: usize,
    prefix: Vec<MonomialIdeal>,
}

impl TableSequence {
    pub fn new(prefix: Vec<MonomialIdeal>) -> Result<Self> {
        let first = prefix
            .first()
            .ok_or_else(|| Error::invalid("table sequence needs at least one term"))?;
        let nvars = first.nvars();
        for a in &prefix {
            check_dim(nvars, a.nvars())?;
        }
        if prefix.iter().all(MonomialIdeal::is_zero) {
            return Err(Error::ZeroIdeal("every tabulated term is zero".into()));
        }
        Ok(Self { nvars, prefix })
    }

    pub fn prefix(&self) -> &[MonomialIdeal] {
        &self.prefix
    }

    fn terms(&self, window: u32) -> Vec<MonomialIdeal> {
        let mut out: Vec<MonomialIdeal> = Vec::with_capacity(window as usize);
        for m in 1..=window as usize {
            let mut acc = self
                .prefix
                .get(m - 1)
                .cloned()
                .unwrap_or_else(|| MonomialIdeal::zero(self.nvars));
            for i in 1..=m / 2 {
                let prod = out[i - 1].product(&out[m - i - 1]).expect("same ring");
                acc = acc.sum(&prod).expect("same ring");
            }
            out.push(acc);
        }
        out
    }
}

/// A rule producing `a_m` for every `m ≥ 1`; `a_0` is the unit ideal.
#[derive(Clone, Debug)]
pub enum GradedMonomialSequence {
    /// `a_m = a^m`.
    PowersOf(MonomialIdeal),
    /// `a_m = (x^u : ⟨α, u⟩ ≥ m)` for `α > 0`.
    ValuationIdealsOf(Vec<Rational>),
    /// `a_m = (x^u : u ∈ m·P)`.
    RegionDefined(NewtonRegion),
    Table(TableSequence),
    /// `c_j = Σ_{i ≤ j} a_i·m^{p(j−i)}` for the maximal ideal `m`.
    Enlarged { base: Box<GradedMonomialSequence>, p: u32 },
}

impl GradedMonomialSequence {
    pub fn powers_of(a: MonomialIdeal) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroIdeal("powers of the zero ideal".into()));
        }
        Ok(Self::PowersOf(a))
    }

    pub fn valuation_ideals(alpha: Vec<Rational>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::invalid("valuation ideals need at least one weight"));
        }
        if !alpha.iter().all(Signed::is_positive) {
            return Err(Error::invalid(
                "valuation ideals need all weights positive (valuation centred at the origin)",
            ));
        }
        Ok(Self::ValuationIdealsOf(alpha))
    }

    pub fn region(region: NewtonRegion) -> Self {
        Self::RegionDefined(region)
    }

    pub fn table(prefix: Vec<MonomialIdeal>) -> Result<Self> {
        Ok(Self::Table(TableSequence::new(prefix)?))
    }

    pub fn enlarged(base: GradedMonomialSequence, p: u32) -> Result<Self> {
        if p == 0 {
            return Err(Error::invalid("enlargement exponent must be positive"));
        }
        Ok(Self::Enlarged {
            base: Box::new(base),
            p,
        })
    }

    pub fn nvars(&self) -> usize {
        match self {
            Self::PowersOf(a) => a.nvars(),
            Self::ValuationIdealsOf(alpha) => alpha.len(),
            Self::RegionDefined(r) => r.dim(),
            Self::Table(t) => t.nvars,
            Self::Enlarged { base, .. } => base.nvars(),
        }
    }

    fn valuation_polyhedron(alpha: &[Rational]) -> Polyhedron {
        let n = alpha.len();
        let pts = (0..n)
            .map(|i| {
                let mut v = vec![Rational::zero(); n];
                v[i] = alpha[i].recip();
                v
            })
            .collect();
        Polyhedron::from_points(n, pts).expect("positive weights")
    }

    /// `a_1, …, a_window`.
    pub fn terms(&self, window: u32) -> Result<Vec<MonomialIdeal>> {
        match self {
            Self::PowersOf(a) => {
                let mut out = Vec::with_capacity(window as usize);
                let mut cur = MonomialIdeal::unit(a.nvars());
                for _ in 0..window {
                    cur = cur.product(a)?;
                    out.push(cur.clone());
                }
                Ok(out)
            }
            Self::Table(t) => Ok(t.terms(window)),
            Self::Enlarged { base, p } => {
                let n = base.nvars();
                let b = base.terms(window)?;
                let m_p = MonomialIdeal::maximal_power(n, *p);
                // powers[k] = m^{pk}
                let mut powers = vec![MonomialIdeal::unit(n)];
                for k in 1..=window as usize {
                    let next = powers[k - 1].product(&m_p)?;
                    powers.push(next);
                }
                let mut out = Vec::with_capacity(window as usize);
                for j in 1..=window as usize {
                    let mut c = powers[j].clone();
                    for i in 1..=j {
                        c = c.sum(&b[i - 1].product(&powers[j - i])?)?;
                    }
                    out.push(c);
                }
                Ok(out)
            }
            _ => (1..=window).map(|m| self.term(m)).collect(),
        }
    }

    /// `a_m`.
    pub fn term(&self, m: u32) -> Result<MonomialIdeal> {
        let n = self.nvars();
        if m == 0 {
            return Ok(MonomialIdeal::unit(n));
        }
        let scale = Rational::from_integer(m.into());
        match self {
            Self::PowersOf(a) => Ok(a.pow(m)),
            Self::ValuationIdealsOf(alpha) => Ok(Self::valuation_polyhedron(alpha).lattice_points(&scale, false)),
            Self::RegionDefined(r) => r.lattice_points(&scale, false),
            Self::Table(_) | Self::Enlarged { .. } => Ok(self.terms(m)?.pop().expect("m ≥ 1")),
        }
    }

    /// `P(a•)`, exact except for tables (inner approximation from the
    /// window) and oracle regions.
    pub fn limit_region(&self, m_max: u32) -> Result<Tagged<NewtonRegion>> {
        match self {
            Self::PowersOf(a) => Ok(Tagged::exact(NewtonRegion::of_ideal(a)?)),
            Self::ValuationIdealsOf(alpha) => Ok(Tagged::exact(NewtonRegion::Polyhedral(
                Self::valuation_polyhedron(alpha),
            ))),
            Self::RegionDefined(r) => {
                let precision = match r {
                    NewtonRegion::Polyhedral(_) => Precision::Exact,
                    NewtonRegion::Oracle(o) => Precision::Approximate {
                        tolerance: o.tolerance(),
                    },
                };
                Ok(Tagged::new(r.clone(), precision))
            }
            Self::Table(t) => {
                let terms = t.terms(m_max.max(1));
                let mut pts = Vec::new();
                for (i, a) in terms.iter().enumerate() {
                    let m = Rational::from_integer((i as u64 + 1).into());
                    for g in a.generators() {
                        pts.push(g.to_rational().into_iter().map(|c| c / &m).collect());
                    }
                }
                if pts.is_empty() {
                    return Err(Error::ZeroIdeal("all terms in the window are zero".into()));
                }
                let p = Polyhedron::from_points(t.nvars, pts)?;
                Ok(Tagged::new(
                    NewtonRegion::Polyhedral(p),
                    Precision::InnerApproximation { window: m_max.max(1) },
                ))
            }
            Self::Enlarged { base, p } => {
                let inner = base.limit_region(m_max)?;
                let poly = inner.value.polyhedron().ok_or_else(|| {
                    Error::Unsupported("enlargement of an oracle-defined sequence".into())
                })?;
                let n = base.nvars();
                let corner = Polyhedron::from_points(
                    n,
                    (0..n)
                        .map(|i| {
                            let mut v = vec![Rational::zero(); n];
                            v[i] = Rational::from_integer((*p).into());
                            v
                        })
                        .collect(),
                )?;
                Ok(Tagged::new(NewtonRegion::Polyhedral(poly.hull_with(&corner)?), inner.precision))
            }
        }
    }

    /// Whether [`Self::limit_region`] is exact.
    pub fn has_exact_limit(&self) -> bool {
        match self {
            Self::PowersOf(_) | Self::ValuationIdealsOf(_) => true,
            Self::RegionDefined(r) => r.polyhedron().is_some(),
            Self::Table(_) => false,
            Self::Enlarged { base, .. } => base.has_exact_limit(),
        }
    }
}
