//! Exact rational arithmetic and a certified simplex solver.
//!
//! [`Rational`] is an arbitrary precision fraction kept in lowest terms with a
//! positive denominator. [`solve`] handles standard-form programs
//! `min c·x, Ax = b, x ≥ 0` and returns a certificate for every outcome.

mod linalg;
mod simplex;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use linalg::{rank, solve_square};
pub use simplex::{solve, solve_with, LinearProgram, LpReport, LpSolution, PivotRule};

/// Arbitrary precision rational number, always reduced.
pub type Rational = num_rational::BigRational;

/// Builds the canonical form of `num/den`.
pub fn normalize(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::invalid("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

/// Shorthand for a small rational constant. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a signed variant of either.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = n
        .parse()
        .map_err(|_| Error::invalid(format!("not a rational: {text:?}")))?;
    let den: BigInt = d
        .parse()
        .map_err(|_| Error::invalid(format!("not a rational: {text:?}")))?;
    normalize(num, den)
}

/// Nearest `f64`, for reporting and for mixing with oracle values.
pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge terms: scale both down before dividing.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            if d == 0.0 {
                f64::INFINITY
            } else {
                n / d
            }
        }
    }
}

/// Smallest integer `≥ r`.
pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Largest integer `≤ r`.
pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Least common multiple of the denominators, as an integer.
pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Dot product of two rational vectors of equal length.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// A rational or `+∞`.
///
/// `+∞` is the value of any valuation on the zero ideal and the threshold of
/// the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(Rational),
    Infinite,
}

impl Extended {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Extended::Finite(r) => Some(r),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Extended::Infinite)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Extended::Finite(r) => to_f64(r),
            Extended::Infinite => f64::INFINITY,
        }
    }

    /// `1/x` with `1/0 = ∞` and `1/∞ = 0`; only meaningful for `x ≥ 0`.
    pub fn recip(&self) -> Extended {
        match self {
            Extended::Infinite => Extended::Finite(Rational::zero()),
            Extended::Finite(r) if r.is_zero() => Extended::Infinite,
            Extended::Finite(r) => Extended::Finite(r.recip()),
        }
    }

    pub fn min(self, other: Extended) -> Extended {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Multiplication by a nonnegative rational, with `0·∞ = 0`.
    pub fn scale(&self, factor: &Rational) -> Extended {
        match self {
            Extended::Finite(r) => Extended::Finite(r * factor),
            Extended::Infinite if factor.is_zero() => Extended::Finite(Rational::zero()),
            Extended::Infinite => Extended::Infinite,
        }
    }
}

impl From<Rational> for Extended {
    fn from(r: Rational) -> Self {
        Extended::Finite(r)
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for Extended {
    type Output = Extended;
    fn add(self, rhs: Extended) -> Extended {
        match (self, rhs) {
            (Extended::Finite(a), Extended::Finite(b)) => Extended::Finite(a + b),
            _ => Extended::Infinite,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(r) => write!(f, "{r}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

/// True when every entry is `≥ 0`.
pub fn is_nonnegative(v: &[Rational]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
