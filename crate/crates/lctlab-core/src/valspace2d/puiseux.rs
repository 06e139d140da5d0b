use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::Polynomial2;
use crate::error::{Error, Result};
use crate::ratlp::{Extended, Rational};

/// Exponents `β_1 < … < β_K` with `β_1 ≥ 1` and nonzero coefficients.
///
/// Level `n` is the valuation `f ↦ ord_x f(x, Σ_{j<n} c_j x^{β_j} + θ x^{β_n})`
/// for a transcendental `θ`, never the curve itself.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuiseuxData {
    exponents: Vec<Rational>,
    coefficients: Vec<Rational>,
}

impl PuiseuxData {
    pub fn new(exponents: Vec<Rational>, coefficients: Vec<Rational>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::invalid("Puiseux data needs at least one exponent"));
        }
        if exponents.len() != coefficients.len() {
            return Err(Error::DimensionMismatch {
                expected: exponents.len(),
                found: coefficients.len(),
            });
        }
        if exponents[0] < Rational::one() {
            return Err(Error::invalid("first Puiseux exponent must be at least 1"));
        }
        if exponents.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("Puiseux exponents must be strictly increasing"));
        }
        if coefficients.iter().any(Zero::is_zero) {
            return Err(Error::invalid("Puiseux coefficients must be nonzero"));
        }
        Ok(Self {
            exponents,
            coefficients,
        })
    }

    /// All coefficients equal to one.
    pub fn with_unit_coefficients(exponents: Vec<Rational>) -> Result<Self> {
        let n = exponents.len();
        Self::new(exponents, vec![Rational::one(); n])
    }

    pub fn exponents(&self) -> &[Rational] {
        &self.exponents
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn depth(&self) -> usize {
        self.exponents.len()
    }

    fn check_level(&self, level: usize) -> Result<()> {
        if level == 0 || level > self.depth() {
            return Err(Error::invalid(format!("level {level} outside 1..={}", self.depth())));
        }
        Ok(())
    }

    /// `lcm` of the denominators of `β_1, …, β_level`.
    pub fn multiplicity(&self, level: usize) -> BigInt {
        self.exponents[..level.min(self.depth())]
            .iter()
            .fold(BigInt::one(), |acc, b| acc.lcm(b.denom()))
    }

    /// `A(v_level) = 1 + β_level`.
    pub fn log_discrepancy(&self, level: usize) -> Rational {
        Rational::one() + &self.exponents[level - 1]
    }
}

/// Polynomial in `θ`, lowest degree first, without trailing zeros.
type ThetaPoly = Vec<Rational>;
/// Generalised power series in `x` with `θ`-polynomial coefficients.
type Series = BTreeMap<Rational, ThetaPoly>;

fn poly_mul(a: &ThetaPoly, b: &ThetaPoly) -> ThetaPoly {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_into(acc: &mut ThetaPoly, b: &ThetaPoly, scale: &Rational) {
    if acc.len() < b.len() {
        acc.resize(b.len(), Rational::zero());
    }
    for (i, y) in b.iter().enumerate() {
        acc[i] += y * scale;
    }
}

fn trim(mut p: ThetaPoly) -> ThetaPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn series_mul(a: &Series, b: &Series) -> Series {
    let mut out: Series = BTreeMap::new();
    for (e, p) in a {
        for (f, q) in b {
            let slot = out.entry(e + f).or_default();
            poly_add_into(slot, &poly_mul(p, q), &Rational::one());
        }
    }
    out.into_iter()
        .map(|(e, p)| (e, trim(p)))
        .filter(|(_, p)| !p.is_empty())
        .collect()
}

/// `v_level(f)` with its leading `θ`-coefficient and a stability flag.
#[derive(Clone, Debug, PartialEq)]
pub struct PuiseuxEval {
    pub value: Extended,
    /// Coefficient of `x^value` as a polynomial in `θ`, lowest degree first.
    pub theta_coefficient: Vec<Rational>,
    /// `b_level > ord_0(f)`: every branch of `f` through the origin has
    /// multiplicity at most `ord_0(f)`, so it separates from the series by
    /// `β_level` and deeper levels give the same value.
    pub stable: bool,
}

pub fn eval_puiseux(data: &PuiseuxData, f: &Polynomial2, level: usize) -> Result<PuiseuxEval> {
    data.check_level(level)?;
    let Some(ord0) = f.ord0() else {
        return Ok(PuiseuxEval {
            value: Extended::Infinite,
            theta_coefficient: Vec::new(),
            stable: true,
        });
    };
    let mut y: Series = BTreeMap::new();
    for j in 0..level - 1 {
        y.insert(data.exponents[j].clone(), vec![data.coefficients[j].clone()]);
    }
    y.insert(data.exponents[level - 1].clone(), vec![Rational::zero(), Rational::one()]);

    let dy = f.degree_in_y().unwrap_or(0) as usize;
    let mut powers: Vec<Series> = vec![BTreeMap::from([(Rational::zero(), vec![Rational::one()])])];
    for k in 1..=dy {
        let next = series_mul(&powers[k - 1], &y);
        powers.push(next);
    }
    let mut total: Series = BTreeMap::new();
    for (&(i, j), c) in f.terms() {
        let shift = Rational::from_integer(i.into());
        for (e, p) in &powers[j as usize] {
            poly_add_into(total.entry(e + &shift).or_default(), p, c);
        }
    }
    let leading = total
        .into_iter()
        .map(|(e, p)| (e, trim(p)))
        .find(|(_, p)| !p.is_empty());
    let (value, theta_coefficient) = match leading {
        Some((e, p)) => (Extended::Finite(e), p),
        None => return Err(Error::Computation("nonzero polynomial vanished identically on a generic arc".into())),
    };
    Ok(PuiseuxEval {
        value,
        theta_coefficient,
        stable: data.multiplicity(level) > BigInt::from(ord0),
    })
}

/// Values at levels `1, 2, …` until the stability bound is met.
#[derive(Clone, Debug, PartialEq)]
pub struct StableEval {
    pub value: Extended,
    pub level: usize,
    pub stable: bool,
    pub history: Vec<Extended>,
}

pub fn eval_until_stable(data: &PuiseuxData, f: &Polynomial2) -> Result<StableEval> {
    let mut history = Vec::new();
    for level in 1..=data.depth() {
        let e = eval_puiseux(data, f, level)?;
        history.push(e.value.clone());
        if e.stable {
            return Ok(StableEval {
                value: e.value,
                level,
                stable: true,
                history,
            });
        }
    }
    Ok(StableEval {
        value: history.last().cloned().expect("depth ≥ 1"),
        level: data.depth(),
        stable: false,
        history,
    })
}
