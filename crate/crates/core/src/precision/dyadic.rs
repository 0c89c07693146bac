//! Exact binary floating values `mantissa * 2^exponent`.

use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::mag::Mag;

/// An exact dyadic rational. Kept normalized: the mantissa is odd, or zero
/// with exponent zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Dyadic { man: BigInt::one(), exp: 0 }
    }

    pub fn new(man: BigInt, exp: i64) -> Self {
        let mut d = Dyadic { man, exp };
        d.normalize();
        d
    }

    pub fn from_i64(v: i64) -> Self {
        Dyadic::new(BigInt::from(v), 0)
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Dyadic::new(v, 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Self {
        Dyadic { man: BigInt::one(), exp: e }
    }

    fn normalize(&mut self) {
        match self.man.trailing_zeros() {
            None => self.exp = 0,
            Some(tz) if tz > 0 => {
                self.man >>= tz;
                self.exp += tz as i64;
            }
            Some(_) => {}
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.man
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn sign(&self) -> Sign {
        self.man.sign()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.man.is_positive()
    }

    pub fn abs(&self) -> Self {
        Dyadic { man: self.man.abs(), exp: self.exp }
    }

    /// Number of significant bits in the mantissa.
    pub fn bits(&self) -> u64 {
        self.man.bits()
    }

    /// Smallest `e` with `|self| < 2^e`; `i64::MIN` for zero.
    pub fn mag_exp(&self) -> i64 {
        if self.is_zero() {
            i64::MIN
        } else {
            self.exp + self.man.bits() as i64
        }
    }

    pub fn mul_2exp(&self, e: i64) -> Self {
        if self.is_zero() {
            return Dyadic::zero();
        }
        Dyadic { man: self.man.clone(), exp: self.exp + e }
    }

    /// Rounds toward negative infinity to at most `prec` significant bits.
    /// Returns the rounded value and an upper bound on the discarded part.
    pub fn round_floor(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::zero());
        }
        let shift = bits - prec as u64;
        // `>>` on BigInt rounds toward negative infinity
        let man = &self.man >> shift;
        let rounded = Dyadic::new(man, self.exp + shift as i64);
        let exact = rounded == *self;
        let err = if exact { Mag::zero() } else { Mag::pow2(self.exp + shift as i64) };
        (rounded, err)
    }

    /// Rounds to nearest with at most `prec` significant bits, returning the
    /// error bound alongside.
    pub fn round_nearest(&self, prec: u32) -> (Dyadic, Mag) {
        let bits = self.bits();
        if bits <= prec as u64 {
            return (self.clone(), Mag::zero());
        }
        let shift = bits - prec as u64;
        let half = BigInt::one() << (shift - 1);
        let man = (&self.man + half) >> shift;
        let rounded = Dyadic::new(man, self.exp + shift as i64);
        let err = if rounded == *self { Mag::zero() } else { Mag::pow2(self.exp + shift as i64 - 1) };
        (rounded, err)
    }

    /// Quotient truncated to roughly `prec` significant bits, with an upper
    /// bound on the truncation error. Panics on a zero divisor.
    pub fn div_round(&self, other: &Dyadic, prec: u32) -> (Dyadic, Mag) {
        assert!(!other.is_zero(), "dyadic division by zero");
        if self.is_zero() {
            return (Dyadic::zero(), Mag::zero());
        }
        let shift = (prec as i64 + other.bits() as i64 - self.bits() as i64 + 2).max(0);
        let num = &self.man << (shift as u64);
        let (q, r) = num_integer::Integer::div_rem(&num, &other.man);
        let qexp = self.exp - shift - other.exp;
        let err = if r.is_zero() { Mag::zero() } else { Mag::pow2(qexp) };
        (Dyadic::new(q, qexp), err)
    }

    /// Floor of the square root to roughly `prec` bits (always a lower
    /// bound), with an upper bound on the truncation error.
    pub fn sqrt_floor(&self, prec: u32) -> (Dyadic, Mag) {
        assert!(!self.is_negative(), "square root of a negative dyadic");
        if self.is_zero() {
            return (Dyadic::zero(), Mag::zero());
        }
        // scale mantissa so its exponent is even and it carries 2*prec bits
        let mut shift = (2 * prec as i64 + 4 - self.bits() as i64).max(0);
        if (self.exp - shift).rem_euclid(2) != 0 {
            shift += 1;
        }
        let m = &self.man << (shift as u64);
        let root = m.sqrt();
        let exact = &root * &root == m;
        let rexp = (self.exp - shift) / 2;
        let err = if exact { Mag::zero() } else { Mag::pow2(rexp) };
        (Dyadic::new(root, rexp), err)
    }

    /// Floor of `self * 10^digits`, as an integer.
    pub fn scaled_floor_pow10(&self, digits: u32) -> BigInt {
        let p10 = num_traits::pow(BigInt::from(10), digits as usize);
        let v = &self.man * p10;
        if self.exp >= 0 {
            v << (self.exp as u64)
        } else {
            v >> ((-self.exp) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (man, exp) = if bits > 60 {
            let s = bits - 60;
            ((&self.man >> s).to_f64().unwrap_or(0.0), self.exp + s as i64)
        } else {
            (self.man.to_f64().unwrap_or(0.0), self.exp)
        };
        let exp = exp.clamp(-2000, 2000) as i32;
        man * 2f64.powi(exp.clamp(-1000, 1000)) * 2f64.powi(exp - exp.clamp(-1000, 1000))
    }

    /// Exact conversion to a rational.
    pub fn to_rational(&self) -> num_rational::BigRational {
        use num_rational::BigRational;
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << (self.exp as u64))
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << ((-self.exp) as u64))
        }
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.sign(), other.sign()) {
            (a, b) if a != b => return sign_rank(a).cmp(&sign_rank(b)),
            (Sign::NoSign, _) => return Ordering::Equal,
            _ => {}
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << ((self.exp - e) as u64);
        let b = &other.man << ((other.exp - e) as u64);
        a.cmp(&b)
    }
}

fn sign_rank(s: Sign) -> i8 {
    match s {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.man << ((self.exp - e) as u64);
        let b = &rhs.man << ((rhs.exp - e) as u64);
        Dyadic::new(a + b, e)
    }
}

impl Sub for &Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        self + &(-rhs)
    }
}

impl Mul for &Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        Dyadic::new(&self.man * &rhs.man, self.exp + rhs.exp)
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic { man: -&self.man, exp: self.exp }
    }
}

impl Dyadic {
    pub fn add(&self, other: &Dyadic) -> Dyadic {
        self + other
    }

    pub fn sub(&self, other: &Dyadic) -> Dyadic {
        self - other
    }

    pub fn mul(&self, other: &Dyadic) -> Dyadic {
        self * other
    }
}
