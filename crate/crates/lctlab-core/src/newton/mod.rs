//! Monomial ideals, Newton regions, graded sequences and the pairing with
//! monomial valuations.

mod ideal;
mod region;
mod sequence;
mod valuation;

use std::fmt;

use crate::ratlp::{to_f64, Rational};

pub use ideal::{default_var_names, minimal_generators, ExponentVector, MonomialIdeal};
pub use region::{oracle_ray_entry, Example8, NewtonRegion, Polyhedron, RegionOracle};
pub use sequence::{GradedMonomialSequence, TableSequence};
pub use valuation::MonomialValuation;

/// How far a reported answer can be trusted.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Precision {
    Exact,
    /// Built from a finite window of a table; the true region contains the
    /// reported one.
    InnerApproximation { window: u32 },
    /// Depends on floating point oracle answers.
    Approximate { tolerance: f64 },
}

impl Precision {
    pub fn is_exact(&self) -> bool {
        matches!(self, Precision::Exact)
    }

    /// The weaker of two tags.
    pub fn combine(self, other: Precision) -> Precision {
        use Precision::*;
        match (self, other) {
            (Approximate { tolerance: a }, Approximate { tolerance: b }) => Approximate { tolerance: a.max(b) },
            (a @ Approximate { .. }, _) | (_, a @ Approximate { .. }) => a,
            (InnerApproximation { window: a }, InnerApproximation { window: b }) => {
                InnerApproximation { window: a.min(b) }
            }
            (a @ InnerApproximation { .. }, _) | (_, a @ InnerApproximation { .. }) => a,
            (Exact, Exact) => Exact,
        }
    }
}

/// A value together with its precision tag.
#[derive(Clone, Debug, PartialEq)]
pub struct Tagged<T> {
    pub value: T,
    pub precision: Precision,
}

impl<T> Tagged<T> {
    pub fn exact(value: T) -> Self {
        Self {
            value,
            precision: Precision::Exact,
        }
    }

    pub fn new(value: T, precision: Precision) -> Self {
        Self { value, precision }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Tagged<U> {
        Tagged {
            value: f(self.value),
            precision: self.precision,
        }
    }
}

/// A scalar answer: exact, infinite, or a floating point estimate with a
/// certified bracket.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Infinite,
    Approx { value: f64, lo: f64, hi: f64 },
}

impl Value {
    pub fn approx(value: f64, tol: f64) -> Self {
        Value::Approx {
            value,
            lo: value - tol,
            hi: value + tol,
        }
    }

    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(r) => Some(r),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(r) => to_f64(r),
            Value::Infinite => f64::INFINITY,
            Value::Approx { value, .. } => *value,
        }
    }

    /// `1/x` with `1/0 = ∞`; brackets are inverted accordingly.
    pub fn recip(&self) -> Value {
        use num_traits::Zero;
        match self {
            Value::Exact(r) if r.is_zero() => Value::Infinite,
            Value::Exact(r) => Value::Exact(r.recip()),
            Value::Infinite => Value::Exact(Rational::zero()),
            Value::Approx { value, lo, hi } => Value::Approx {
                value: 1.0 / value,
                lo: 1.0 / hi,
                hi: if *lo > 0.0 { 1.0 / lo } else { f64::INFINITY },
            },
        }
    }
}

impl From<crate::ratlp::Extended> for Value {
    fn from(e: crate::ratlp::Extended) -> Self {
        match e {
            crate::ratlp::Extended::Finite(r) => Value::Exact(r),
            crate::ratlp::Extended::Infinite => Value::Infinite,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{r}"),
            Value::Infinite => f.write_str("inf"),
            Value::Approx { value, lo, hi } => write!(f, "{value:.12} in [{lo:.12}, {hi:.12}]"),
        }
    }
}

/// `P(a)` as a region.
pub fn newton_polyhedron(a: &MonomialIdeal) -> crate::Result<NewtonRegion> {
    NewtonRegion::of_ideal(a)
}

/// `v(a) = min_g ⟨α, g⟩`, `+∞` on the zero ideal.
pub fn val_on_ideal(v: &MonomialValuation, a: &MonomialIdeal) -> crate::Result<crate::Extended> {
    v.eval_ideal(a)
}

/// `v(a•)`, see [`MonomialValuation::eval_sequence`].
pub fn val_on_sequence(v: &MonomialValuation, seq: &GradedMonomialSequence, m_max: u32) -> crate::Result<Tagged<Value>> {
    v.eval_sequence(seq, m_max)
}
