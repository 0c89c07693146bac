//! Rigorous evaluation and cross-checking of the partial-fraction expansion
//! of `tan x`, the cosine product, Bernoulli and Euler numbers, Hurwitz zeta
//! values and several continued fractions for `pi`.
//!
//! Non-exact values are [`Real`] balls; exact values are [`Rational`]s.

pub mod contfrac;
pub mod numbers;
pub mod precision;
pub mod series;
pub mod taylor;

pub use precision::{const_pi, eval_elementary, Elementary, PrecisionPolicy, Rational, Real};

/// Errors raised by the evaluators.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{function}: {detail}")]
    Domain { function: &'static str, detail: &'static str },
    #[error("argument interval straddles a pole of {0}")]
    PoleStraddle(&'static str),
    #[error("division by an interval containing zero")]
    DivisionByZero,
    #[error("jet division by a series whose constant term may vanish")]
    JetDivision,
    #[error("all convergents up to depth {0} are singular")]
    SingularConvergent(usize),
    #[error("argument outside the radius of convergence of {0}")]
    ConvergenceDomain(&'static str),
    #[error("invalid precision policy: {0}")]
    InvalidPolicy(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
