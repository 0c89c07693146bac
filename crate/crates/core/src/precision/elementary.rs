//! Enclosures of the seven elementary functions used as reference values.
//!
//! Each kernel runs the whole computation in ball arithmetic at a raised
//! working precision, so the input radius and every rounding are carried
//! through automatically. Only the Taylor truncation errors are added by
//! hand.

use std::sync::Mutex;

use num_bigint::BigInt;

use super::dyadic::Dyadic;
use super::mag::Mag;
use super::policy::PrecisionPolicy;
use super::real::Real;
use crate::Error;

/// Functions accepted by [`eval_elementary`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Elementary {
    Tan,
    Tanh,
    Cos,
    Cosh,
    Log,
    Sqrt,
    Exp,
}

impl Elementary {
    pub fn name(self) -> &'static str {
        match self {
            Elementary::Tan => "tan",
            Elementary::Tanh => "tanh",
            Elementary::Cos => "cos",
            Elementary::Cosh => "cosh",
            Elementary::Log => "log",
            Elementary::Sqrt => "sqrt",
            Elementary::Exp => "exp",
        }
    }
}

/// Evaluates `f(x)` at the policy's working precision.
pub fn eval_elementary(f: Elementary, x: &Real, policy: &PrecisionPolicy) -> Result<Real, Error> {
    let x = x.with_prec(policy.working_bits());
    match f {
        Elementary::Tan => tan(&x),
        Elementary::Tanh => Ok(tanh(&x)),
        Elementary::Cos => Ok(cos(&x)),
        Elementary::Cosh => Ok(cosh(&x)),
        Elementary::Log => log(&x),
        Elementary::Sqrt => x.sqrt(),
        Elementary::Exp => Ok(exp(&x)),
    }
}

fn reduction_bits(prec: u32) -> i64 {
    ((prec as f64).sqrt() / 2.0).ceil() as i64 + 2
}

/// Upper bound on `b^k / k!` updated incrementally.
fn next_term_bound(prev: Mag, b: Mag, k: u64) -> Mag {
    prev.mul(&b).div_lower(&Dyadic::from_i64(k as i64))
}

pub fn exp(x: &Real) -> Real {
    let prec = x.prec();
    if x.is_exact() && x.mid().is_zero() {
        return Real::one(prec);
    }
    let e = x.abs_upper().mag_exp();
    let r0 = reduction_bits(prec);
    let s = (e + r0).max(0);
    let w = prec + s as u32 + 24;
    let y = x.with_prec(w).mul_2exp(-s);
    let yb = y.abs_upper();
    let target = Mag::pow2(-(w as i64) - 4);

    let mut sum = Real::one(w);
    let mut term = Real::one(w);
    let mut bound = Mag::from_u64(1);
    let mut k = 1u64;
    loop {
        term = (&term * &y).div_i64(k as i64);
        sum = &sum + &term;
        bound = next_term_bound(bound, yb, k);
        k += 1;
        let next = next_term_bound(bound, yb, k);
        if next < target {
            // |y| <= 1/2 so the tail is at most twice its first term
            sum = sum.add_error(next.mul_2exp(1));
            break;
        }
    }
    for _ in 0..s {
        sum = sum.sqr();
    }
    sum.with_prec(prec)
}

/// Both `sin x` and `cos x` from one argument reduction.
pub fn sin_cos(x: &Real) -> (Real, Real) {
    let prec = x.prec();
    if x.is_exact() && x.mid().is_zero() {
        return (Real::zero(prec), Real::one(prec));
    }
    let e = x.abs_upper().mag_exp();
    let r0 = reduction_bits(prec);
    let s = (e + r0).max(0);
    let w = prec + 2 * s as u32 + 24;
    let y = x.with_prec(w).mul_2exp(-s);
    let yb = y.abs_upper();
    let target = Mag::pow2(-(w as i64) - 4);

    let mut sin = y.clone();
    let mut cos = Real::one(w);
    let mut term = y.clone(); // y^k / k!
    let mut bound = yb;
    let mut k = 1u64;
    loop {
        k += 1;
        term = (&term * &y).div_i64(k as i64);
        bound = next_term_bound(bound, yb, k);
        let sign_neg = (k / 2) % 2 == 1;
        let signed = if sign_neg { -&term } else { term.clone() };
        if k.is_multiple_of(2) {
            cos = &cos + &signed;
        } else {
            sin = &sin + &signed;
        }
        let next = next_term_bound(bound, yb, k + 1);
        if next < target {
            // alternating series with decreasing terms
            let tail = next.add(&next_term_bound(next, yb, k + 2));
            sin = sin.add_error(tail);
            cos = cos.add_error(tail);
            break;
        }
    }
    for _ in 0..s {
        let s2 = (&sin * &cos).mul_2exp(1);
        let c2 = &Real::one(w) - &sin.sqr().mul_2exp(1);
        sin = s2;
        cos = c2;
    }
    (sin.with_prec(prec), cos.with_prec(prec))
}

pub fn cos(x: &Real) -> Real {
    sin_cos(x).1
}

pub fn sin(x: &Real) -> Real {
    sin_cos(x).0
}

/// `tan x`; fails when the cosine enclosure contains zero.
pub fn tan(x: &Real) -> Result<Real, Error> {
    let prec = x.prec();
    let (s, c) = sin_cos(&x.with_prec(prec + 16));
    if c.contains_zero() {
        return Err(Error::PoleStraddle("tan"));
    }
    Ok((&s / &c).with_prec(prec))
}

pub fn cosh(x: &Real) -> Real {
    let prec = x.prec();
    let ex = exp(&x.with_prec(prec + 8));
    let inv = ex.recip().expect("exp is positive");
    (&ex + &inv).mul_2exp(-1).with_prec(prec)
}

pub fn tanh(x: &Real) -> Real {
    let prec = x.prec();
    let e2 = exp(&x.with_prec(prec + 16).mul_2exp(1));
    let one = Real::one(prec + 16);
    ((&e2 - &one) / (&e2 + &one)).with_prec(prec)
}

/// Natural logarithm of a strictly positive ball.
pub fn log(x: &Real) -> Result<Real, Error> {
    let prec = x.prec();
    if !x.is_positive() {
        return Err(Error::Domain { function: "log", detail: "argument interval not strictly positive" });
    }
    if x.is_exact() && *x.mid() == Dyadic::one() {
        return Ok(Real::zero(prec));
    }
    let j = reduction_bits(prec);
    let w = prec + j as u32 + 32;
    // y = x / 2^k with midpoint in [1, 2)
    let k = x.mid().mag_exp() - 1;
    let mut y = x.with_prec(w).mul_2exp(-k);
    for _ in 0..j {
        y = y.sqrt()?;
    }
    let one = Real::one(w);
    let z = (&y - &one).checked_div(&(&y + &one))?;
    let at = atanh_series(&z, w);
    let mut result = at.mul_2exp(j + 1);
    if k != 0 {
        result = &result + &log2(w).mul_i64(k);
    }
    Ok(result.with_prec(prec))
}

/// `atanh z` for `|z| <= 1/3` by its odd power series.
fn atanh_series(z: &Real, w: u32) -> Real {
    let zb = z.abs_upper();
    assert!(zb <= Mag::pow2(-1), "atanh argument too large");
    let z2 = z.sqr();
    let z2b = zb.mul(&zb);
    let target = Mag::pow2(-(w as i64) - 4);
    let mut pow = z.clone();
    let mut powb = zb;
    let mut sum = z.clone();
    let mut i = 1i64;
    loop {
        pow = &pow * &z2;
        powb = powb.mul(&z2b);
        sum = &sum + &pow.div_i64(2 * i + 1);
        i += 1;
        // tail <= |z|^(2i+1) / (2i+1) / (1 - z^2) <= 2 |z|^(2i+1)
        let tail = powb.mul(&z2b).mul_2exp(1);
        if tail < target {
            return sum.add_error(tail);
        }
    }
}

/// `log 2 = 2 atanh(1/3)`.
pub fn log2(w: u32) -> Real {
    atanh_series(&Real::ratio(1, 3, w + 8), w + 8).mul_2exp(1).with_prec(w)
}

/// `pi` by Machin's arctangent formula, independent of every series and
/// continued fraction in this crate.
///
/// The most precise value computed so far is kept and rounded down for
/// later requests.
pub fn const_pi_bits(prec: u32) -> Real {
    static CACHE: Mutex<Option<Real>> = Mutex::new(None);
    let w = prec + 16;
    if let Some(pi) = CACHE.lock().expect("pi cache poisoned").as_ref() {
        if pi.prec() >= w {
            return pi.with_prec(prec);
        }
    }
    let a = atan_recip(5, w).mul_i64(16);
    let b = atan_recip(239, w).mul_i64(4);
    let pi = &a - &b;
    let mut cache = CACHE.lock().expect("pi cache poisoned");
    if cache.as_ref().is_none_or(|c| c.prec() < w) {
        *cache = Some(pi.clone());
    }
    pi.with_prec(prec)
}

/// `atan(1/m)` for an integer `m >= 2`.
fn atan_recip(m: i64, w: u32) -> Real {
    let inv = Real::ratio(1, m, w + 8);
    let inv2 = inv.sqr();
    let m2 = BigInt::from(m) * m;
    let target = Dyadic::pow2(-(w as i64) - 6);
    let mut pow = inv.clone();
    let mut sum = inv.clone();
    let mut denom_pow = BigInt::from(m); // m^(2i+1)
    let mut i = 1i64;
    loop {
        pow = &pow * &inv2;
        denom_pow *= &m2;
        let term = pow.div_i64(2 * i + 1);
        sum = if i % 2 == 1 { &sum - &term } else { &sum + &term };
        i += 1;
        // alternating with decreasing terms: tail below the next term
        let next = Dyadic::one().div_round(&Dyadic::from_bigint(&denom_pow * &m2 * (2 * i + 1)), 16).0;
        if next < target {
            let bound = Mag::from_dyadic(&next).mul_2exp(1);
            return sum.add_error(bound).with_prec(w);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::Rational;

    const P: u32 = 192;

    fn digits(x: &Real, d: u32) -> String {
        x.to_decimal(d)
    }

    #[test]
    fn pi_digits() {
        let pi = const_pi_bits(P);
        assert_eq!(digits(&pi, 40), "3.1415926535897932384626433832795028841971");
        // radius <= 2^(1 - P) * pi
        assert!(pi.rad().to_dyadic() <= Dyadic::pow2(1 - P as i64).mul(&Dyadic::from_i64(3)));
    }

    #[test]
    fn exp_and_log_are_inverse() {
        let x = Real::ratio(7, 5, P);
        let y = log(&exp(&x)).unwrap();
        assert!(y.overlaps(&x));
        assert!(y.rad().mag_exp() < -(P as i64) + 12);
        // e to 30 places
        assert_eq!(digits(&exp(&Real::one(P)), 30), "2.718281828459045235360287471352");
    }

    #[test]
    fn log_of_two_and_small_values() {
        let l2 = log(&Real::from_i64(2, P)).unwrap();
        assert_eq!(digits(&l2, 30), "0.693147180559945309417232121458");
        let l = log(&Real::ratio(1, 1000, P)).unwrap();
        assert_eq!(digits(&l, 20), "-6.90775527898213705205");
        assert!(log(&Real::zero(P)).is_err());
    }

    #[test]
    fn trig_values() {
        let (s, c) = sin_cos(&Real::one(P));
        assert_eq!(digits(&s, 30), "0.841470984807896506652502321630");
        assert_eq!(digits(&c, 30), "0.540302305868139717400936607442");
        let pi4 = const_pi_bits(P).mul_2exp(-2);
        let t = tan(&pi4).unwrap();
        assert!(t.contains_rational(&Rational::from_integer(1.into())));
    }

    #[test]
    fn tan_pole_detected() {
        let half_pi = Real::new(const_pi_bits(64).mid().mul_2exp(-1), Mag::pow2(-2), 64);
        assert_eq!(tan(&half_pi), Err(Error::PoleStraddle("tan")));
    }

    #[test]
    fn hyperbolic_values() {
        let x = Real::one(P);
        assert_eq!(digits(&cosh(&x), 30), "1.543080634815243778477905620757");
        assert_eq!(digits(&tanh(&x), 30), "0.761594155955764888119458282604");
        let lc = log(&cosh(&Real::ratio(1, 2, P))).unwrap();
        assert_eq!(digits(&lc, 20), "0.12011450695827752463");
    }

    #[test]
    fn large_argument_cos() {
        let c = cos(&Real::from_i64(100, P));
        assert_eq!(digits(&c, 25), "0.8623188722876839341019385");
    }
}
