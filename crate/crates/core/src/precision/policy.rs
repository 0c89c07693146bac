use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Mag, Rational};
use crate::Error;

pub const DEFAULT_BITS: u32 = 256;
pub const MAX_BITS: u32 = 4096;
pub const MIN_BITS: u32 = 64;

/// Working precision plus the tolerance a result radius must meet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    working_bits: u32,
    target_tolerance: Rational,
}

impl PrecisionPolicy {
    pub fn new(working_bits: u32, target_tolerance: Rational) -> Result<Self, Error> {
        if working_bits < MIN_BITS {
            return Err(Error::InvalidPolicy(format!(
                "working_bits must be at least {MIN_BITS}, got {working_bits}"
            )));
        }
        if !target_tolerance.is_positive() {
            return Err(Error::InvalidPolicy("target tolerance must be positive".into()));
        }
        Ok(PrecisionPolicy { working_bits, target_tolerance })
    }

    /// `bits` of working precision with the default `1e-30` tolerance.
    pub fn with_bits(bits: u32) -> Result<Self, Error> {
        PrecisionPolicy::new(bits, pow10_tolerance(-30))
    }

    pub fn working_bits(&self) -> u32 {
        self.working_bits
    }

    pub fn target_tolerance(&self) -> &Rational {
        &self.target_tolerance
    }

    pub fn with_tolerance(&self, tol: Rational) -> Result<Self, Error> {
        PrecisionPolicy::new(self.working_bits, tol)
    }

    /// The policy at twice the precision, or `None` past [`MAX_BITS`].
    pub fn escalated(&self) -> Option<Self> {
        let next = self.working_bits.checked_mul(2)?;
        (next <= MAX_BITS)
            .then(|| PrecisionPolicy { working_bits: next, target_tolerance: self.target_tolerance.clone() })
    }

    /// `2^-e` roughly at the scale of the tolerance, for internal cut-offs.
    pub fn tolerance_exp(&self) -> i64 {
        let n = self.target_tolerance.numer().bits() as i64;
        let d = self.target_tolerance.denom().bits() as i64;
        n - d - 1
    }

    /// Whether a radius meets the target tolerance.
    pub fn accepts(&self, rad: Mag) -> bool {
        rad.to_dyadic().to_rational() <= self.target_tolerance
    }
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy::with_bits(DEFAULT_BITS).expect("default policy is valid")
    }
}

/// Exact `10^e` as a rational.
pub fn pow10_tolerance(e: i32) -> Rational {
    let p = num_traits::pow(BigInt::from(10), e.unsigned_abs() as usize);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::from(1), p)
    }
}

/// Parses decimal or scientific notation (`1e-30`, `0.001`, `25`) exactly.
pub fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (int, frac) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int}{frac}").parse().unwrap_or_else(|_| BigInt::zero());
    let scale = exp - frac.len() as i32;
    let mut q = Rational::from_integer(digits) * pow10_tolerance(scale);
    if neg {
        q = -q;
    }
    Some(q)
}
