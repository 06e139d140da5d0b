//! Valuations on the plane `k[x, y]`.
//!
//! Quasi-monomial valuations centred at the origin are represented either by
//! monomial weights or by a truncated Puiseux series with a transcendental
//! tail coefficient `θ`. Blowup chains produce such series level by level and
//! carry the log discrepancies of their exceptional divisors.

mod chain;
mod fan;
mod poly;
mod puiseux;

pub use chain::{
    build_chain, chi_trace, log_discrepancy, BlowupKind, BlowupRecord, ChainLevel, ChiRow, ChiTarget,
    ChiTrace, DivisorRecord, Frame, SkpChain, Tangent,
};
pub use fan::{a_invariance_check, fan_refine_2d, AInvarianceReport, Cone, Fan2D};
pub use poly::Polynomial2;
pub use puiseux::{eval_puiseux, eval_until_stable, PuiseuxData, PuiseuxEval, StableEval};

use crate::error::{check_dim, Result};
use crate::newton::{MonomialIdeal, MonomialValuation};
use crate::ratlp::{dot, Extended, Rational};

/// `min{⟨α, β⟩ : c_β ≠ 0}`, `+∞` for the zero polynomial.
pub fn eval_monomial(alpha: &[Rational], f: &Polynomial2) -> Result<Extended> {
    check_dim(2, alpha.len())?;
    Ok(f.exponents()
        .map(|(i, j)| dot(alpha, &[Rational::from_integer(i.into()), Rational::from_integer(j.into())]))
        .min()
        .map_or(Extended::Infinite, Extended::Finite))
}

/// A quasi-monomial valuation on the plane.
#[derive(Clone, Debug, PartialEq)]
pub enum Valuation2 {
    Monomial(MonomialValuation),
    /// `f ↦ ord_x f(x, y(x))` for the series at `level`; with `swapped` the
    /// roles of `x` and `y` are exchanged.
    Puiseux {
        data: PuiseuxData,
        level: usize,
        swapped: bool,
    },
}

impl Valuation2 {
    pub fn eval(&self, f: &Polynomial2) -> Result<Extended> {
        match self {
            Valuation2::Monomial(v) => eval_monomial(v.alpha(), f),
            Valuation2::Puiseux { data, level, swapped } => {
                let g = if *swapped { f.swapped() } else { f.clone() };
                Ok(eval_puiseux(data, &g, *level)?.value)
            }
        }
    }

    /// `(v(x), v(y))` as a monomial valuation: the retraction onto the
    /// coordinate cone, which satisfies `r(v) ≤ v`.
    pub fn retraction(&self) -> Result<MonomialValuation> {
        let vx = self.eval(&Polynomial2::x())?;
        let vy = self.eval(&Polynomial2::y())?;
        MonomialValuation::new(vec![
            vx.finite().cloned().expect("x is not zero"),
            vy.finite().cloned().expect("y is not zero"),
        ])
    }

    /// `A(v)`: `α_1 + α_2` for monomial weights and `1 + β_level` for a series.
    pub fn log_discrepancy(&self) -> Rational {
        match self {
            Valuation2::Monomial(v) => v.log_discrepancy(),
            Valuation2::Puiseux { data, level, .. } => data.log_discrepancy(*level),
        }
    }

    /// On monomial ideals a valuation agrees with its retraction.
    pub fn eval_ideal(&self, a: &MonomialIdeal) -> Result<Extended> {
        self.retraction()?.eval_ideal(a)
    }
}

/// `r(v) = (v(x), v(y))`.
pub fn retraction_monomial(v: &Valuation2) -> Result<MonomialValuation> {
    v.retraction()
}
