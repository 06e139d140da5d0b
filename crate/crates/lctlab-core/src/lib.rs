//! Exact asymptotic invariants of graded sequences of monomial ideals.
//!
//! The crate is organised bottom-up:
//!
//! * [`ratlp`]: rationals and a certified exact simplex solver.
//! * [`newton`]: monomial ideals, Newton regions, graded sequences and the
//!   monomial valuation pairing.
//! * [`multiplier`]: Howald multiplier ideals, thresholds, jumping numbers and
//!   computing valuations.
//! * [`asymptotics`]: Fekete-type limits, valuation-ideal sequences and
//!   enlargements.
//! * [`valspace2d`]: the planar valuation engine (Puiseux data, blowup chains,
//!   regular fans).
//!
//! Everything in the exact core uses arbitrary precision rationals. Answers
//! that depend on an oracle region are tagged with [`newton::Precision`].

pub mod asymptotics;
mod error;
pub mod multiplier;
pub mod newton;
pub mod ratlp;
pub mod valspace2d;

pub use error::{Error, Result};
pub use multiplier::Options;
pub use ratlp::{Extended, Rational};
