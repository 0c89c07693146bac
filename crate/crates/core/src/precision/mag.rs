//! Low-precision unsigned upper bounds used as ball radii.
//!
//! Every operation rounds up, so a `Mag` computed from bounds is itself a
//! bound.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::dyadic::Dyadic;

const MAG_BITS: u32 = 30;

/// Non-negative value `man * 2^exp` with `man < 2^30`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Mag {
    man: u64,
    exp: i64,
}

impl Mag {
    pub const fn zero() -> Self {
        Mag { man: 0, exp: 0 }
    }

    pub fn pow2(e: i64) -> Self {
        Mag { man: 1 << (MAG_BITS - 1), exp: e - (MAG_BITS as i64 - 1) }
    }

    pub fn from_u64(v: u64) -> Self {
        Mag::normalize_up(v as u128, 0)
    }

    fn normalize_up(mut man: u128, mut exp: i64) -> Self {
        if man == 0 {
            return Mag::zero();
        }
        let limit = 1u128 << MAG_BITS;
        if man < limit >> 1 {
            let shift = man.leading_zeros() - (128 - MAG_BITS);
            return Mag { man: (man << shift) as u64, exp: exp - shift as i64 };
        }
        if man >= limit {
            let shift = 128 - man.leading_zeros() - MAG_BITS;
            let lost = man & ((1u128 << shift) - 1);
            man >>= shift;
            exp += shift as i64;
            if lost != 0 {
                man += 1;
                if man >= limit {
                    man >>= 1;
                    exp += 1;
                    // man was exactly 2^30 so the shift is exact
                }
            }
        }
        Mag { man: man as u64, exp }
    }

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    /// Upper bound on `|d|`.
    pub fn from_dyadic(d: &Dyadic) -> Self {
        if d.is_zero() {
            return Mag::zero();
        }
        let m = d.mantissa().abs();
        let bits = m.bits();
        if bits <= MAG_BITS as u64 {
            return Mag::normalize_up(m.to_u64().unwrap_or(0) as u128, d.exponent());
        }
        let shift = bits - MAG_BITS as u64;
        let top = (&m >> shift).to_u64().unwrap_or(0);
        // the mantissa is odd after normalization, so bits were dropped
        Mag::normalize_up(top as u128 + 1, d.exponent() + shift as i64)
    }

    pub fn to_dyadic(&self) -> Dyadic {
        Dyadic::new(BigInt::from(self.man), self.exp)
    }

    /// Smallest `e` with `self < 2^e`; `i64::MIN` for zero.
    pub fn mag_exp(&self) -> i64 {
        if self.man == 0 {
            i64::MIN
        } else {
            self.exp + (64 - self.man.leading_zeros()) as i64
        }
    }

    pub fn add(&self, other: &Mag) -> Mag {
        if self.is_zero() {
            return *other;
        }
        if other.is_zero() {
            return *self;
        }
        let (hi, lo) = if self.mag_exp() >= other.mag_exp() { (self, other) } else { (other, self) };
        if lo.mag_exp() <= hi.exp {
            // lo < 2^hi.exp, at most one unit in hi's last place
            return Mag::normalize_up(hi.man as u128 + 1, hi.exp);
        }
        let e = hi.exp.min(lo.exp);
        let a = (hi.man as u128) << (hi.exp - e);
        let b = (lo.man as u128) << (lo.exp - e);
        Mag::normalize_up(a + b, e)
    }

    pub fn mul(&self, other: &Mag) -> Mag {
        if self.is_zero() || other.is_zero() {
            return Mag::zero();
        }
        Mag::normalize_up(self.man as u128 * other.man as u128, self.exp + other.exp)
    }

    pub fn mul_2exp(&self, e: i64) -> Mag {
        if self.is_zero() {
            return *self;
        }
        Mag { man: self.man, exp: self.exp + e }
    }

    pub fn mul_u64(&self, v: u64) -> Mag {
        self.mul(&Mag::from_u64(v))
    }

    /// Upper bound on `self / d` for a positive lower bound `d`.
    pub fn div_lower(&self, d: &Dyadic) -> Mag {
        assert!(d.is_positive(), "Mag::div_lower needs a positive divisor");
        if self.is_zero() {
            return Mag::zero();
        }
        let m = d.mantissa();
        let bits = m.bits();
        // truncating the divisor keeps it a lower bound
        let (den, dexp) = if bits > 62 {
            let s = bits - 62;
            ((m >> s).to_u64().unwrap_or(1), d.exponent() + s as i64)
        } else {
            (m.to_u64().unwrap_or(1), d.exponent())
        };
        let num = (self.man as u128) << 64;
        let q = num / den as u128 + 1;
        Mag::normalize_up(q, self.exp - 64 - dexp)
    }

    pub fn max(&self, other: &Mag) -> Mag {
        if self >= other {
            *self
        } else {
            *other
        }
    }

    /// Approximate value; saturates to 0 or infinity outside the f64 range.
    pub fn to_f64(&self) -> f64 {
        if self.man == 0 {
            return 0.0;
        }
        let e = self.exp.clamp(-1200, 1200) as i32;
        (self.man as f64) * 2f64.powi(e.clamp(-1000, 1000)) * 2f64.powi(e - e.clamp(-1000, 1000))
    }

    /// Decimal rendering `d.ddde±x` with `sig` significant digits, rounded
    /// upward in the last digit (up to f64 noise in the logarithm). Works far
    /// outside the f64 range.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if self.man == 0 {
            return "0".to_string();
        }
        // log10(value) split as integer + fraction computed in f64
        let l = (self.man as f64).log10() + self.exp as f64 * std::f64::consts::LOG10_2;
        let mut e10 = l.floor();
        let mut lead = 10f64.powf(l - e10);
        if lead >= 10.0 {
            lead /= 10.0;
            e10 += 1.0;
        }
        let scale = 10f64.powi(sig as i32 - 1);
        let mut digits = (lead * scale - 1e-9).ceil() / scale;
        if digits >= 10.0 {
            digits /= 10.0;
            e10 += 1.0;
        }
        format!("{:.*}e{}", sig - 1, digits, e10 as i64)
    }
}

impl PartialOrd for Mag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_dyadic().cmp(&other.to_dyadic())
    }
}

impl fmt::Display for Mag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci_string(3))
    }
}
