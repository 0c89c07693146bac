//! Ball arithmetic, exact rationals and an independent value of pi.
//!
//! A [`Real`] is a midpoint/radius pair: the exact quantity it stands for is
//! guaranteed to lie within `radius` of `midpoint`. Every operation widens
//! the radius enough to keep that guarantee, so identities can be checked by
//! interval overlap instead of by eyeballing digits.

mod dyadic;
mod elementary;
mod mag;
mod policy;
mod real;

pub use dyadic::Dyadic;
pub use elementary::{cos, cosh, eval_elementary, exp, log, sin, sin_cos, tan, tanh, Elementary};
pub use mag::Mag;
pub use policy::{parse_decimal, pow10_tolerance, PrecisionPolicy, DEFAULT_BITS, MAX_BITS, MIN_BITS};
pub use real::{binomial, factorial, is_reduced, Real};

/// Exact rational with an arbitrary-size numerator and positive denominator,
/// always stored in lowest terms.
pub type Rational = num_rational::BigRational;

/// `pi` enclosed with radius at most `2^(1 - working_bits) * pi`.
///
/// Computed from Machin's arctangent formula, so it is independent of every
/// series and continued fraction this crate verifies.
pub fn const_pi(policy: &PrecisionPolicy) -> Real {
    elementary::const_pi_bits(policy.working_bits())
}

/// `pi` at an explicit precision.
pub fn pi_bits(bits: u32) -> Real {
    elementary::const_pi_bits(bits)
}

/// `p/q * pi`, the usual way special arguments are supplied.
pub fn pi_times(num: i64, den: i64, bits: u32) -> Real {
    pi_bits(bits + 4).mul_i64(num).div_i64(den).with_prec(bits)
}
