use num_traits::{Signed, Zero};

use super::{GradedMonomialSequence, MonomialIdeal, Precision, Tagged, Value};
use crate::error::{check_dim, Error, Result};
use crate::newton::ExponentVector;
use crate::ratlp::{dot, Extended, Rational};

/// The monomial valuation `val_α`, `α ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialValuation {
    alpha: Vec<Rational>,
}

impl MonomialValuation {
    pub fn new(alpha: Vec<Rational>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::invalid("valuation needs at least one weight"));
        }
        if alpha.iter().any(Signed::is_negative) {
            return Err(Error::invalid("monomial valuation weights must be nonnegative"));
        }
        Ok(Self { alpha })
    }

    pub fn from_integers(alpha: &[i64]) -> Result<Self> {
        Self::new(alpha.iter().map(|&a| Rational::from_integer(a.into())).collect())
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    pub fn dim(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.alpha.iter().all(Zero::is_zero)
    }

    /// `A(val_α) = ⟨e, α⟩`.
    pub fn log_discrepancy(&self) -> Rational {
        self.alpha.iter().fold(Rational::zero(), |a, b| a + b)
    }

    pub fn eval_monomial(&self, u: &ExponentVector) -> Rational {
        dot(&self.alpha, &u.to_rational())
    }

    pub fn eval_ideal(&self, a: &MonomialIdeal) -> Result<Extended> {
        check_dim(self.dim(), a.nvars())?;
        Ok(a.generators()
            .iter()
            .map(|g| self.eval_monomial(g))
            .min()
            .map_or(Extended::Infinite, Extended::Finite))
    }

    /// `v(a•) = inf ⟨u, α⟩` over the limit region. Table sequences give the
    /// window minimum of `v(a_m)/m`, which bounds the limit from above.
    pub fn eval_sequence(&self, seq: &GradedMonomialSequence, m_max: u32) -> Result<Tagged<Value>> {
        check_dim(self.dim(), seq.nvars())?;
        if let GradedMonomialSequence::Table(_) = seq {
            let terms = seq.terms(m_max)?;
            let best = terms
                .iter()
                .enumerate()
                .filter_map(|(i, a)| {
                    self.eval_ideal(a)
                        .ok()
                        .and_then(|v| v.finite().cloned())
                        .map(|v| v / Rational::from_integer((i as u64 + 1).into()))
                })
                .min();
            let value = best.map_or(Value::Infinite, Value::Exact);
            return Ok(Tagged::new(value, Precision::InnerApproximation { window: m_max }));
        }
        let region = seq.limit_region(m_max)?;
        let value = region.value.support_value(&self.alpha)?;
        Ok(Tagged::new(value, region.precision))
    }
}
