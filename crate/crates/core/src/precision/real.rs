//! Midpoint-radius balls over dyadic midpoints.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::Rational;
use crate::Error;

/// A real number known to lie in `[mid - rad, mid + rad]`.
///
/// Arithmetic rounds the midpoint to `prec` bits and folds the rounding
/// error into the radius, so results always enclose the exact image of the
/// inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    mid: Dyadic,
    rad: Mag,
    prec: u32,
}

impl Real {
    pub fn new(mid: Dyadic, rad: Mag, prec: u32) -> Self {
        let (mid, err) = mid.round_nearest(prec);
        Real { mid, rad: rad.add(&err), prec }
    }

    pub fn zero(prec: u32) -> Self {
        Real { mid: Dyadic::zero(), rad: Mag::zero(), prec }
    }

    pub fn one(prec: u32) -> Self {
        Real { mid: Dyadic::one(), rad: Mag::zero(), prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        Real::new(Dyadic::from_i64(v), Mag::zero(), prec)
    }

    pub fn from_bigint(v: &BigInt, prec: u32) -> Self {
        Real::new(Dyadic::from_bigint(v.clone()), Mag::zero(), prec)
    }

    pub fn from_dyadic(d: Dyadic, prec: u32) -> Self {
        Real::new(d, Mag::zero(), prec)
    }

    /// Encloses `q`; exact whenever the denominator is a power of two and the
    /// numerator fits in `prec` bits.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let num = Dyadic::from_bigint(q.numer().clone());
        let den = q.denom();
        if den.is_one() {
            return Real::new(num, Mag::zero(), prec);
        }
        let tz = den.trailing_zeros().unwrap_or(0);
        if (den >> tz).is_one() {
            return Real::new(num.mul_2exp(-(tz as i64)), Mag::zero(), prec);
        }
        let (q, err) = num.div_round(&Dyadic::from_bigint(den.clone()), prec + 8);
        Real::new(q, err, prec)
    }

    /// `num / den` for machine integers.
    pub fn ratio(num: i64, den: i64, prec: u32) -> Self {
        Real::from_rational(&Rational::new(BigInt::from(num), BigInt::from(den)), prec)
    }

    pub fn mid(&self) -> &Dyadic {
        &self.mid
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same ball, new working precision for subsequent operations.
    pub fn with_prec(&self, prec: u32) -> Real {
        Real::new(self.mid.clone(), self.rad, prec)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn lower(&self) -> Dyadic {
        self.mid.sub(&self.rad.to_dyadic())
    }

    pub fn upper(&self) -> Dyadic {
        self.mid.add(&self.rad.to_dyadic())
    }

    /// Upper bound on `|x|` over the ball.
    pub fn abs_upper(&self) -> Mag {
        Mag::from_dyadic(&self.mid).add(&self.rad)
    }

    /// Lower bound on `|x|` over the ball (zero when the ball contains 0).
    pub fn abs_lower(&self) -> Dyadic {
        let d = self.mid.abs().sub(&self.rad.to_dyadic());
        if d.is_negative() {
            Dyadic::zero()
        } else {
            d
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.abs_lower().is_positive()
    }

    pub fn is_positive(&self) -> bool {
        self.lower().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.upper().is_negative()
    }

    /// Whether the two balls share at least one point.
    pub fn overlaps(&self, other: &Real) -> bool {
        let gap = self.mid.sub(&other.mid).abs();
        gap <= self.rad.add(&other.rad).to_dyadic()
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Real) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn contains_rational(&self, q: &Rational) -> bool {
        let lo = self.lower().to_rational();
        let hi = self.upper().to_rational();
        &lo <= q && q <= &hi
    }

    /// Distance between the balls (zero when they overlap), as an upper
    /// bound on the true separation.
    pub fn gap(&self, other: &Real) -> Dyadic {
        let d = self.mid.sub(&other.mid).abs().sub(&self.rad.add(&other.rad).to_dyadic());
        if d.is_negative() {
            Dyadic::zero()
        } else {
            d
        }
    }

    pub fn add_error(&self, err: Mag) -> Real {
        Real { mid: self.mid.clone(), rad: self.rad.add(&err), prec: self.prec }
    }

    /// Smallest ball (at this precision) containing both inputs.
    pub fn union(&self, other: &Real) -> Real {
        let lo = self.lower().min(other.lower());
        let hi = self.upper().max(other.upper());
        let mid = lo.add(&hi).mul_2exp(-1);
        let rad = Mag::from_dyadic(&hi.sub(&mid));
        Real::new(mid, rad, self.prec.max(other.prec))
    }

    pub fn mul_2exp(&self, e: i64) -> Real {
        Real { mid: self.mid.mul_2exp(e), rad: self.rad.mul_2exp(e), prec: self.prec }
    }

    pub fn abs(&self) -> Real {
        Real { mid: self.mid.abs(), rad: self.rad, prec: self.prec }
    }

    pub fn sqr(&self) -> Real {
        self * self
    }

    pub fn pow(&self, n: u32) -> Real {
        let mut result = Real::one(self.prec);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        result
    }

    pub fn mul_i64(&self, v: i64) -> Real {
        self * &Real::from_i64(v, self.prec)
    }

    pub fn mul_rational(&self, q: &Rational) -> Real {
        self * &Real::from_rational(q, self.prec)
    }

    pub fn div_i64(&self, v: i64) -> Real {
        self.checked_div(&Real::from_i64(v, self.prec)).expect("division by a nonzero integer")
    }

    pub fn div_bigint(&self, v: &BigInt) -> Real {
        self.checked_div(&Real::from_bigint(v, self.prec)).expect("division by a nonzero integer")
    }

    pub fn recip(&self) -> Result<Real, Error> {
        Real::one(self.prec).checked_div(self)
    }

    /// Ball division; fails when the divisor ball contains zero.
    pub fn checked_div(&self, rhs: &Real) -> Result<Real, Error> {
        if rhs.contains_zero() {
            return Err(Error::DivisionByZero);
        }
        let prec = self.prec.max(rhs.prec);
        let (q, qerr) = self.mid.div_round(&rhs.mid, prec + 4);
        let denom_lower = rhs.abs_lower();
        let qbound = Mag::from_dyadic(&q).add(&qerr);
        let prop = self.rad.add(&qbound.mul(&rhs.rad)).div_lower(&denom_lower);
        Ok(Real::new(q, qerr.add(&prop), prec))
    }

    /// Square root; the ball must lie in `[0, inf)`.
    pub fn sqrt(&self) -> Result<Real, Error> {
        if self.is_exact() && self.mid.is_zero() {
            return Ok(self.clone());
        }
        if !self.is_positive() {
            return Err(Error::Domain { function: "sqrt", detail: "argument not strictly positive" });
        }
        let (root, err) = self.mid.sqrt_floor(self.prec + 4);
        let lo = self.lower();
        let (lo_root, _) = lo.sqrt_floor(32);
        let prop = if self.rad.is_zero() {
            Mag::zero()
        } else if lo_root.is_positive() {
            self.rad.div_lower(&lo_root)
        } else {
            // lower endpoint too small for 32-bit root; use sqrt(rad) bound
            let (r, e) = self.rad.to_dyadic().sqrt_floor(32);
            Mag::from_dyadic(&r).add(&e).mul_2exp(1)
        };
        Ok(Real::new(root, err.add(&prop), self.prec))
    }

    /// Decimal rendering of the midpoint truncated to `digits` places after
    /// the point.
    pub fn to_decimal(&self, digits: u32) -> String {
        let scaled = self.mid.scaled_floor_pow10(digits);
        // floor rounds toward -inf; present truncation toward zero instead
        let (neg, mag) = if self.mid.is_negative() {
            let alt = (-&self.mid).scaled_floor_pow10(digits);
            (true, alt)
        } else {
            (false, scaled)
        };
        let s = mag.to_string();
        let d = digits as usize;
        let body = if d == 0 {
            s
        } else if s.len() > d {
            format!("{}.{}", &s[..s.len() - d], &s[s.len() - d..])
        } else {
            format!("0.{}{}", "0".repeat(d - s.len()), s)
        };
        if neg && mag_nonzero(&body) {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Number of decimal places worth printing for this ball.
    pub fn meaningful_digits(&self) -> u32 {
        let by_prec = (self.prec as f64 * std::f64::consts::LOG10_2).ceil() as i64;
        let by_rad = if self.rad.is_zero() {
            by_prec
        } else {
            (-(self.rad.mag_exp() as f64) * std::f64::consts::LOG10_2).floor() as i64 + 2
        };
        by_prec.min(by_rad).clamp(1, 5000) as u32
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Exact rational value of the midpoint.
    pub fn mid_rational(&self) -> Rational {
        self.mid.to_rational()
    }
}

fn mag_nonzero(s: &str) -> bool {
    s.chars().any(|c| c.is_ascii_digit() && c != '0')
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {}", self.to_decimal(self.meaningful_digits()), self.rad)
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        let mid = self.mid.add(&rhs.mid);
        Real::new(mid, self.rad.add(&rhs.rad), self.prec.max(rhs.prec))
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        let mid = self.mid.sub(&rhs.mid);
        Real::new(mid, self.rad.add(&rhs.rad), self.prec.max(rhs.prec))
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        let mid = self.mid.mul(&rhs.mid);
        let a = Mag::from_dyadic(&self.mid).mul(&rhs.rad);
        let b = Mag::from_dyadic(&rhs.mid).mul(&self.rad);
        let c = self.rad.mul(&rhs.rad);
        Real::new(mid, a.add(&b).add(&c), self.prec.max(rhs.prec))
    }
}

impl Div for &Real {
    type Output = Real;
    /// Panics when the divisor contains zero; use [`Real::checked_div`] where
    /// that can happen.
    fn div(self, rhs: &Real) -> Real {
        self.checked_div(rhs).expect("ball division by an interval containing zero")
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real { mid: -&self.mid, rad: self.rad, prec: self.prec }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, rhs: &Real) -> Real {
                (&self).$m(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $m(self, rhs: Real) -> Real {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

/// Exact integer `n!`.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `gcd`-reduced check helper used by tests and callers.
pub fn is_reduced(q: &Rational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}
