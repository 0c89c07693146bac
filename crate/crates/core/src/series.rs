//! Infinite sums and products over odd multiples of pi, with proven tails.
//!
//! The partial-fraction sums decay like `1/k^2`, so summing them directly
//! stalls at a handful of digits. Past a cut `K` every term is expanded in
//! powers of `1/(2k+1)`, and the resulting odd-denominator tails
//! `sum_{k>=K} (2k+1)^-e = lambda(e) - sum_{k<K} (2k+1)^-e` come from the
//! closed form of `lambda`. The expansion is geometric in its index, so the
//! cut-off of that inner series has a simple bound.

use num_bigint::BigInt;
use num_traits::One;

use crate::numbers::{euler, lambda_even_at};
use crate::precision::{
    binomial, cos, factorial, log, pi_bits, Dyadic, Mag, PrecisionPolicy, Rational, Real,
};
use crate::Error;

/// How the tail of a sum was controlled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Direct partial sum plus an integral-test bound on what is left.
    DirectIntegralTail,
    /// Direct partial sum plus a tail expanded over `lambda` values.
    ZetaAccelerated,
    /// A power series cut off with a geometric remainder bound.
    GeometricRemainder,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::DirectIntegralTail => "direct+integral-tail",
            Strategy::ZetaAccelerated => "zeta-accelerated",
            Strategy::GeometricRemainder => "geometric-remainder",
        }
    }
}

/// An enclosure of an infinite sum or product.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesResult {
    /// Enclosure of the exact value; the truncation bound is already in
    /// its radius.
    pub value: Real,
    /// Terms summed explicitly.
    pub terms_used: u64,
    /// Bound on everything not summed explicitly.
    pub tail_bound: Mag,
    pub strategy: Strategy,
}

/// Variants of the cosine product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ProductVariant {
    /// `prod (1 - r_k)`, equal to `cos x`.
    Cos,
    /// `prod (1 + r_k)`, equal to `cosh x`.
    Cosh,
    /// `prod (1 - r_k^2)`, equal to `cosh x cos x`.
    CoshCos,
}

/// Ways of evaluating `log cosh x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LogCoshMethod {
    /// `sum_k log(1 + (2x/((2k-1) pi))^2)`.
    ProductLog,
    /// The power series with Euler-number coefficients.
    EulerSeries,
    /// The power series with `(1 - 4^-k) zeta(2k)` coefficients.
    ZetaSeries,
}

fn guard(policy: &PrecisionPolicy) -> u32 {
    policy.working_bits() + 32
}

fn target(w: u32) -> Mag {
    Mag::pow2(-(w as i64) - 2)
}

/// `sum_{k>=k0} (2k+1)^-e` for even `e >= 2`, with absolute error near
/// `2^-prec`.
fn odd_power_tail(k0: u64, e: u32, prec: u32) -> Real {
    debug_assert!(e >= 2 && e.is_multiple_of(2));
    let mut s = lambda_even_at(e / 2, prec);
    for k in 0..k0 {
        let d = Real::from_bigint(&BigInt::from(2 * k + 1).pow(e), prec);
        s = &s - &d.recip().expect("odd integer is non-zero");
    }
    s
}

/// Upper bound on `1 / v` for a positive integer `v`.
fn inv_upper(v: &BigInt) -> Mag {
    Mag::from_u64(1).div_lower(&Dyadic::from_bigint(v.clone()))
}

/// Expansion `sum_{k>=K} sum_{j>=0} c_j (2k+1)^-(s0 + step j)` of a tail.
struct TailExpansion<F: Fn(usize, u32) -> Real> {
    /// Smallest exponent; at least 2.
    s0: u32,
    step: u32,
    /// `c_j` at a requested precision.
    coeff: F,
    /// Upper bound on `|c_(j+1) / c_j|` over all `j`.
    coeff_ratio: Mag,
}

impl<F: Fn(usize, u32) -> Real> TailExpansion<F> {
    /// Smallest cut `K >= k_min` at which consecutive j-terms shrink by at
    /// least 16.
    fn cut(&self, k_min: u64) -> u64 {
        let mut k = k_min.max(1);
        loop {
            let scale = BigInt::from(2 * k + 1).pow(self.step);
            if self.coeff_ratio.mul_u64(16) <= Mag::from_dyadic(&Dyadic::from_bigint(scale)) {
                return k;
            }
            k = if k < 64 { k + 1 } else { k + k / 8 };
        }
    }

    /// The tail from `K` on, enclosed at absolute accuracy near `2^-w`.
    fn sum_from(&self, k: u64, w: u32) -> (Real, Mag) {
        let two_k = BigInt::from(2 * k);
        let base = BigInt::from(2 * k + 1).pow(self.step);
        // sum_{k'>=K} (2k'+1)^-s0 <= (2K)^(1-s0) / (2 (s0-1)) by convexity
        let z = inv_upper(&(two_k.pow(self.s0 - 1) * (2 * (self.s0 - 1))));
        let q_inv = inv_upper(&base);
        let target = target(w);
        let mut sum = Real::zero(w);
        let mut scale = Mag::from_u64(1); // upper bound on (2K+1)^(-step j)
        for j in 0usize.. {
            let c = (self.coeff)(j, w);
            // remaining j-terms: |c_j| (2K+1)^(-step j) z / (1 - q), q <= 1/16
            let rest = c.abs_upper().mul(&scale).mul(&z).mul_2exp(1);
            if rest < target {
                return (sum.add_error(rest), rest);
            }
            let extra = c.abs_upper().mag_exp().max(0) as u32;
            let e = self.s0 + self.step * j as u32;
            let t = odd_power_tail(k, e, w + extra + 8).with_prec(w + 8);
            sum = &sum + &(&c * &t);
            scale = scale.mul(&q_inv);
        }
        unreachable!()
    }
}

fn check_denominator(d: &Real, what: &'static str) -> Result<(), Error> {
    if d.contains_zero() {
        Err(Error::PoleStraddle(what))
    } else {
        Ok(())
    }
}

/// Shared driver: direct terms `k_start..K`, then the expanded tail.
fn accelerated<F, G>(
    k_start: u64,
    direct: G,
    tail: TailExpansion<F>,
    policy: &PrecisionPolicy,
) -> Result<SeriesResult, Error>
where
    F: Fn(usize, u32) -> Real,
    G: Fn(u64, u32) -> Result<Real, Error>,
{
    let w = guard(policy);
    let k = tail.cut(k_start);
    let mut sum = Real::zero(w);
    for i in k_start..k {
        sum = &sum + &direct(i, w)?;
    }
    let (t, bound) = tail.sum_from(k, w);
    Ok(SeriesResult {
        value: (&sum + &t).with_prec(policy.working_bits()),
        terms_used: (k - k_start).max(1),
        tail_bound: bound,
        strategy: Strategy::ZetaAccelerated,
    })
}

/// `((2k+1) pi)^2` at precision `w`.
fn odd_pi_sq(k: u64, pi: &Real) -> Real {
    pi.mul_i64(2 * k as i64 + 1).sqr()
}

/// `sum_{k>=0} 1 / (((2k+1) pi)^2 - 4x^2)`, which equals `tan x / (8x)`.
pub fn odd_partial_fraction_sum(x: &Real, policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    let w = guard(policy);
    let pi = pi_bits(w + 8);
    let y2 = x.with_prec(w + 8).sqr().mul_2exp(2);
    let r = y2.checked_div(&pi.sqr())?; // (2x/pi)^2
    let pi2_inv = pi.sqr().recip()?;
    let tail = TailExpansion {
        s0: 2,
        step: 2,
        coeff: |j: usize, _| &r.pow(j as u32) * &pi2_inv,
        coeff_ratio: r.abs_upper(),
    };
    accelerated(
        0,
        |k, _| {
            let d = &odd_pi_sq(k, &pi) - &y2;
            check_denominator(&d, "1/((2k+1)^2 pi^2 - 4x^2)")?;
            d.recip()
        },
        tail,
        policy,
    )
}

/// The same sum over its first `terms` terms, with the integral-test bound
/// `sum_{k>=K} 2/((2k+1) pi)^2 <= 1/(2 K pi^2)` on the rest. Valid once
/// `8x^2 <= ((2K+1) pi)^2`; the radius only falls like `1/K`.
pub fn odd_partial_fraction_sum_direct(
    x: &Real,
    terms: u64,
    policy: &PrecisionPolicy,
) -> Result<SeriesResult, Error> {
    let w = guard(policy);
    let pi = pi_bits(w);
    let y2 = x.with_prec(w).sqr().mul_2exp(2);
    let terms = terms.max(1);
    let edge = odd_pi_sq(terms, &pi);
    if !(&edge - &y2.mul_2exp(1)).is_positive() {
        return Err(Error::InvalidArgument("too few terms for the integral tail bound".into()));
    }
    let mut sum = Real::zero(w);
    for k in 0..terms {
        let d = &odd_pi_sq(k, &pi) - &y2;
        check_denominator(&d, "1/((2k+1)^2 pi^2 - 4x^2)")?;
        sum = &sum + &d.recip()?;
    }
    // 1 / (2 K pi^2) with pi^2 > 9
    let bound = inv_upper(&BigInt::from(18 * terms));
    Ok(SeriesResult {
        value: sum.add_error(bound).with_prec(policy.working_bits()),
        terms_used: terms,
        tail_bound: bound,
        strategy: Strategy::DirectIntegralTail,
    })
}

/// `1/3 = sum_{k>=1} 1 / ((2k-1)(2k+3))`, the value its partial sums
/// telescope to.
pub fn telescoping_third() -> Rational {
    let quarter = Rational::new(BigInt::one(), BigInt::from(4));
    quarter * (Rational::one() + Rational::new(BigInt::one(), BigInt::from(3)))
}

/// `S_K = 1/4 (1 + 1/3 - 1/(2K+1) - 1/(2K+3))`, the exact partial sum of
/// the telescoping series.
pub fn telescoping_partial(k: u64) -> Rational {
    let r = |d: u64| Rational::new(BigInt::one(), BigInt::from(d));
    (Rational::one() + r(3) - r(2 * k + 1) - r(2 * k + 3)) * r(4)
}

/// `sum_{k>=1} (1/(4k+1) - 1/(4k+3))`, paired as
/// `2/((4k+1)(4k+3)) = sum_j 2^(-2j-1) (2k+1)^(-2j-2)`.
pub fn leibniz_tail_sum(policy: &PrecisionPolicy) -> Result<Real, Error> {
    let tail = TailExpansion {
        s0: 2,
        step: 2,
        coeff: |j: usize, w| Real::one(w).mul_2exp(-2 * j as i64 - 1),
        coeff_ratio: Mag::pow2(-2),
    };
    let r = accelerated(1, |k, w| Ok(Real::ratio(2, ((4 * k + 1) * (4 * k + 3)) as i64, w)), tail, policy)?;
    Ok(r.value)
}

/// `sum_{k>=1} (((2k+1) pi)^2 - 4x^2)^-(n+1)`, the power that the iterated
/// operator on `tan x / (8x) + 1/(4x^2 - pi^2)` produces.
pub fn power_partial_fraction_sum(x: &Real, n: u32, policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("power_partial_fraction_sum needs n >= 1".into()));
    }
    let w = guard(policy);
    let pi = pi_bits(w + 8);
    let y2 = x.with_prec(w + 8).sqr().mul_2exp(2);
    let r = y2.checked_div(&pi.sqr())?;
    let lead = pi.pow(2 * n + 2).recip()?;
    // (A^2 - y^2)^-(n+1) = A^(-2n-2) sum_j C(n+j, j) (y/A)^(2j)
    let tail = TailExpansion {
        s0: 2 * n + 2,
        step: 2,
        coeff: |j: usize, _| {
            let c = Real::from_bigint(&binomial(n as u64 + j as u64, j as u64), w + 8);
            &(&c * &r.pow(j as u32)) * &lead
        },
        coeff_ratio: r.abs_upper().mul_u64(n as u64 + 1),
    };
    accelerated(
        1,
        |k, _| {
            let d = &odd_pi_sq(k, &pi) - &y2;
            check_denominator(&d, "1/((2k+1)^2 pi^2 - 4x^2)")?;
            d.pow(n + 1).recip()
        },
        tail,
        policy,
    )
}

/// `sum_{k>=0} (((2k+1) pi - 2x)^-(2n-1) - ((2k+1) pi + 2x)^-(2n-1))`,
/// summed pairwise.
pub fn odd_power_difference_sum(x: &Real, n: u32, policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("odd_power_difference_sum needs n >= 1".into()));
    }
    let w = guard(policy);
    let m = 2 * n - 1;
    let pi = pi_bits(w + 8);
    let y = x.with_prec(w + 8).mul_2exp(1);
    let t = y.checked_div(&pi)?;
    let t2 = t.sqr();
    let lead = &pi.pow(m).recip()? * &t.mul_2exp(1);
    // pair = 2 A^-m sum_i C(m+2i, 2i+1) (y/A)^(2i+1)
    let m64 = m as u64;
    let tail = TailExpansion {
        s0: 2 * n,
        step: 2,
        coeff: |i: usize, _| {
            let c = Real::from_bigint(&binomial(m64 + 2 * i as u64, 2 * i as u64 + 1), w + 8);
            &(&c * &t2.pow(i as u32)) * &lead
        },
        // the binomial ratio is largest at i = 0
        coeff_ratio: t2.abs_upper().mul_u64((m64 + 1) * (m64 + 2)).mul(&inv_upper(&BigInt::from(6))),
    };
    accelerated(
        0,
        |k, _| {
            let a = pi.mul_i64(2 * k as i64 + 1);
            let lo = &a - &y;
            let hi = &a + &y;
            check_denominator(&lo, "1/((2k+1) pi - 2x)")?;
            check_denominator(&hi, "1/((2k+1) pi + 2x)")?;
            Ok(&lo.pow(m).recip()? - &hi.pow(m).recip()?)
        },
        tail,
        policy,
    )
}

/// `sum_{k>=0} (4 + N^2 (2k+1)^2) / (4 - N^2 (2k+1)^2)^2` with `N = 2n+1`.
fn pi_squared_sum(n: i64, policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    let big_n = (2 * n + 1).unsigned_abs();
    let n2 = BigInt::from(big_n).pow(2);
    let n2_64 = big_n * big_n;
    // (A^2 + 4) / (A^2 - 4)^2 = A^-2 sum_j (2j+1) (4/A^2)^j with A = N (2k+1)
    let tail = TailExpansion {
        s0: 2,
        step: 2,
        coeff: |j: usize, w| {
            let num = BigInt::from(2 * j as u64 + 1) << (2 * j);
            Real::from_rational(&Rational::new(num, n2.pow(j as u32 + 1)), w)
        },
        coeff_ratio: inv_upper(&BigInt::from(n2_64)).mul_u64(12),
    };
    accelerated(
        0,
        |k, w| {
            let a2 = &n2 * BigInt::from(2 * k + 1).pow(2);
            let d: BigInt = (&a2 - 4u32).pow(2);
            Ok(Real::from_rational(&Rational::new(a2 + 4u32, d), w))
        },
        tail,
        policy,
    )
}

/// `8 N^2 cos^2(pi/N) sum_{k>=0} (4 + N^2 (2k+1)^2) / (4 - N^2 (2k+1)^2)^2`
/// with `N = 2n+1`, which equals `pi^2` for every integer `n`.
pub fn pi_squared_series(n: i64, policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    let big_n = 2 * n + 1;
    let mut r = pi_squared_sum(n, policy)?;
    let w = guard(policy);
    let c = cos(&pi_bits(w).div_i64(big_n));
    let factor = c.sqr().mul_i64(8 * big_n * big_n);
    r.value = (&r.value.with_prec(w) * &factor).with_prec(policy.working_bits());
    Ok(r)
}

/// `sqrt(2 sum_{k>=0} (4 + (2k+1)^2) / (4 - (2k+1)^2)^2)`, equal to `pi/2`.
pub fn half_pi_sqrt_series(policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    let mut r = pi_squared_sum(0, policy)?;
    r.value = r.value.with_prec(guard(policy)).mul_2exp(1).sqrt()?.with_prec(policy.working_bits());
    Ok(r)
}

/// `sum_{k>=0} (1/((2k+1)^2 pi^2 + 4x^2) - 1/((2k+1)^2 pi^2 - 4x^2))`,
/// which equals `(tanh x - tan x) / (8x)`.
pub fn tanh_tan_difference_sum(x: &Real, policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    let w = guard(policy);
    let pi = pi_bits(w + 8);
    let y2 = x.with_prec(w + 8).sqr().mul_2exp(2);
    let r = y2.checked_div(&pi.sqr())?;
    let r2 = r.sqr();
    let lead = (&r * &pi.sqr().recip()?).mul_i64(-2);
    // pair = -2 sum_i y^(4i+2) A^(-4i-4)
    let tail = TailExpansion {
        s0: 4,
        step: 4,
        coeff: |i: usize, _| &lead * &r2.pow(i as u32),
        coeff_ratio: r2.abs_upper(),
    };
    accelerated(
        0,
        |k, _| {
            let a2 = odd_pi_sq(k, &pi);
            let minus = &a2 - &y2;
            check_denominator(&minus, "1/((2k+1)^2 pi^2 - 4x^2)")?;
            Ok(&(&a2 + &y2).recip()? - &minus.recip()?)
        },
        tail,
        policy,
    )
}

/// `sum_{k>=K} log(factor_k)` for one of the product variants, expanded as
/// a power series in `r_k = (2x / ((2k+1) pi))^2`.
fn log_factor_expansion(
    variant: ProductVariant,
    r: &Real,
) -> TailExpansion<impl Fn(usize, u32) -> Real + '_> {
    // log(1 - r) = -sum r^m/m; log(1 + r) = sum (-1)^(m-1) r^m/m;
    // log(1 - r^2) = -sum r^(2m)/m
    let (s0, step, base) = match variant {
        ProductVariant::Cos | ProductVariant::Cosh => (2, 2, r.clone()),
        ProductVariant::CoshCos => (4, 4, r.sqr()),
    };
    let ratio = base.abs_upper();
    TailExpansion {
        s0,
        step,
        coeff: move |j: usize, _| {
            let c = base.pow(j as u32 + 1).div_i64(j as i64 + 1);
            match variant {
                ProductVariant::Cosh if j % 2 == 1 => -c,
                ProductVariant::Cosh => c,
                _ => -c,
            }
        },
        coeff_ratio: ratio,
    }
}

fn product_factor(variant: ProductVariant, rk: &Real) -> Real {
    let one = Real::one(rk.prec());
    match variant {
        ProductVariant::Cos => &one - rk,
        ProductVariant::Cosh => &one + rk,
        ProductVariant::CoshCos => &one - &rk.sqr(),
    }
}

/// `prod_{k>=0}` of `1 - r_k`, `1 + r_k` or `1 - r_k^2` with
/// `r_k = (2x / ((2k+1) pi))^2`: `cos x`, `cosh x` and `cosh x cos x`.
pub fn cos_product(
    x: &Real,
    variant: ProductVariant,
    policy: &PrecisionPolicy,
) -> Result<SeriesResult, Error> {
    let w = guard(policy);
    let pi = pi_bits(w + 8);
    let r = x.with_prec(w + 8).mul_2exp(1).checked_div(&pi)?.sqr();
    let tail = log_factor_expansion(variant, &r);
    let k = tail.cut(0);
    let mut prod = Real::one(w);
    for i in 0..k {
        let rk = r.div_i64(((2 * i + 1) * (2 * i + 1)) as i64);
        prod = &prod * &product_factor(variant, &rk);
    }
    let (log_tail, bound) = tail.sum_from(k, w);
    let value = &prod * &crate::precision::exp(&log_tail);
    Ok(SeriesResult {
        value: value.with_prec(policy.working_bits()),
        terms_used: k,
        tail_bound: bound,
        strategy: Strategy::ZetaAccelerated,
    })
}

/// `log cosh x` by one of three expansions.
pub fn log_cosh(x: &Real, method: LogCoshMethod, policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    match method {
        LogCoshMethod::ProductLog => log_cosh_product(x, policy),
        LogCoshMethod::EulerSeries => {
            let w = guard(policy);
            let x2 = x.with_prec(w).sqr();
            // k-th term: -E_(2k-1) 2^(2k-1) / ((2k-1)! 2k) x^(2k)
            even_power_series(x, policy, |k| {
                let c = euler(2 * k as usize - 1) * Rational::from_integer(BigInt::one() << (2 * k - 1))
                    / Rational::from_integer(factorial(2 * k - 1) * BigInt::from(2 * k));
                x2.pow(k as u32).mul_rational(&-c)
            })
        }
        LogCoshMethod::ZetaSeries => {
            let w = guard(policy);
            let pi = pi_bits(w + 8);
            let r = x.with_prec(w + 8).mul_2exp(1).checked_div(&pi)?.sqr();
            // k-th term: (2x/pi)^(2k) (-1)^(k-1) / k (1 - 4^-k) zeta(2k)
            even_power_series(x, policy, |k| {
                let t = (&r.pow(k as u32) * &lambda_even_at(k as u32, w + 8)).div_i64(k as i64);
                if k % 2 == 0 {
                    -t
                } else {
                    t
                }
            })
        }
    }
}

/// `r = (2|x|/pi)^2` as an upper bound strictly below one, or the domain
/// error.
fn series_ratio(x: &Real, w: u32, what: &'static str) -> Result<Mag, Error> {
    let pi = pi_bits(w);
    let r = x.with_prec(w).mul_2exp(1).checked_div(&pi)?.sqr().abs_upper();
    if r >= Mag::from_u64(1) {
        return Err(Error::ConvergenceDomain(what));
    }
    Ok(r)
}

/// Upper bound on `1 / (1 - r)` for `r < 1`.
fn geometric_factor(r: Mag) -> Mag {
    let gap = Dyadic::one().sub(&r.to_dyadic());
    Mag::from_u64(1).div_lower(&gap.round_floor(40).0)
}

/// `sum_{k>=1} term(k)` where `|term(k)| <= (5/4) r^k / k` with
/// `r = (2|x|/pi)^2`. For `log cosh`, `|term(k)| = r^k lambda(2k) / k` and
/// `lambda(2k) <= lambda(2) < 5/4`.
fn even_power_series(
    x: &Real,
    policy: &PrecisionPolicy,
    term: impl Fn(u64) -> Real,
) -> Result<SeriesResult, Error> {
    let w = guard(policy);
    let r = series_ratio(x, w, "log cosh power series needs |x| < pi/2")?;
    let g = geometric_factor(r);
    let target = target(w);
    let mut sum = Real::zero(w);
    let mut rk = r; // r^k
    let mut k = 1u64;
    loop {
        // remaining terms from k on: (5/4) r^k / (1 - r) <= 2 r^k / (1 - r)
        let rest = rk.mul(&g).mul_2exp(1);
        if rest < target || r.is_zero() {
            let rest = if r.is_zero() { Mag::zero() } else { rest };
            return Ok(SeriesResult {
                value: sum.add_error(rest).with_prec(policy.working_bits()),
                terms_used: k - 1,
                tail_bound: rest,
                strategy: Strategy::GeometricRemainder,
            });
        }
        sum = &sum + &term(k);
        rk = rk.mul(&r);
        k += 1;
    }
}

fn log_cosh_product(x: &Real, policy: &PrecisionPolicy) -> Result<SeriesResult, Error> {
    let w = guard(policy);
    let pi = pi_bits(w + 8);
    let r = x.with_prec(w + 8).mul_2exp(1).checked_div(&pi)?.sqr();
    let tail = log_factor_expansion(ProductVariant::Cosh, &r);
    let k = tail.cut(0);
    let mut sum = Real::zero(w);
    for i in 0..k {
        let rk = r.div_i64(((2 * i + 1) * (2 * i + 1)) as i64);
        sum = &sum + &log(&product_factor(ProductVariant::Cosh, &rk).with_prec(w))?;
    }
    let (t, bound) = tail.sum_from(k, w);
    Ok(SeriesResult {
        value: (&sum + &t).with_prec(policy.working_bits()),
        terms_used: k,
        tail_bound: bound,
        strategy: Strategy::ZetaAccelerated,
    })
}

/// `tanh x = -sum_{k>=1} E_(2k-1) 2^(2k-1) / (2k-1)! x^(2k-1)` for
/// `|x| < pi/2`.
pub fn tanh_series(x: &Real, policy: &PrecisionPolicy) -> Result<Real, Error> {
    let w = guard(policy);
    let r = series_ratio(x, w, "tanh power series needs |x| < pi/2")?;
    if r.is_zero() {
        return Ok(Real::zero(policy.working_bits()));
    }
    let xw = x.with_prec(w);
    let x2 = xw.sqr();
    let g = geometric_factor(r);
    let s = xw.mul_2exp(1).checked_div(&pi_bits(w))?.abs_upper();
    // |term k| = (4/pi) lambda(2k) s^(2k-1) with s = 2|x|/pi, below
    // (5/pi) s^(2k-1); the terms from k on stay under 2 s^(2k-1) / (1 - r)
    let target = target(w);
    let mut sum = Real::zero(w);
    let mut xp = xw.clone(); // x^(2k-1)
    let mut sp = s; // s^(2k-1)
    for k in 1u64.. {
        let rest = sp.mul(&g).mul_2exp(1);
        if rest < target {
            return Ok(sum.add_error(rest).with_prec(policy.working_bits()));
        }
        let c = euler(2 * k as usize - 1) * Rational::from_integer(BigInt::one() << (2 * k - 1))
            / Rational::from_integer(factorial(2 * k - 1));
        sum = &sum - &xp.mul_rational(&c);
        xp = &xp * &x2;
        sp = sp.mul(&r);
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{const_pi, pi_times, tan};

    const P: u32 = 192;

    fn policy() -> PrecisionPolicy {
        PrecisionPolicy::with_bits(P).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn odd_tail_matches_direct_sum() {
        // sum_{k>=3} (2k+1)^-20: three terms cover it far past 2^-100
        let t = odd_power_tail(3, 20, 200);
        let mut direct = Real::zero(200);
        for k in 3..200u64 {
            direct = &direct + &Real::from_bigint(&BigInt::from(2 * k + 1).pow(20), 200).recip().unwrap();
        }
        assert!(t.overlaps(&direct.add_error(Mag::pow2(-100))));
    }

    #[test]
    fn odd_partial_fraction_at_zero_and_quarter_pi() {
        let p = policy();
        let pi = const_pi(&p);
        let at0 = odd_partial_fraction_sum(&Real::zero(P), &p).unwrap();
        assert!(at0.value.contains_rational(&q(1, 8)));
        assert!(at0.value.rad().mag_exp() < -(P as i64) + 8);
        let at_q = odd_partial_fraction_sum(&pi_times(1, 4, P), &p).unwrap();
        assert!(at_q.value.overlaps(&pi.mul_2exp(1).recip().unwrap()));
        assert_eq!(at_q.strategy, Strategy::ZetaAccelerated);
    }

    #[test]
    fn odd_partial_fraction_at_pi_drops_first_term() {
        // k >= 1 part at x = pi is 1/(3 pi^2)
        let p = policy();
        let pi = const_pi(&p);
        let s = odd_partial_fraction_sum(&pi, &p).unwrap().value;
        let first = (&pi.sqr() - &pi.sqr().mul_i64(4)).recip().unwrap();
        let rest = &s - &first;
        assert!(rest.overlaps(&pi.sqr().mul_i64(3).recip().unwrap()));
    }

    #[test]
    fn direct_summation_radius() {
        let r = odd_partial_fraction_sum_direct(&Real::one(P), 1000, &policy()).unwrap();
        assert_eq!(r.strategy, Strategy::DirectIntegralTail);
        let tan1 = tan(&Real::one(P)).unwrap().div_i64(8);
        assert!(r.value.overlaps(&tan1));
        assert!(r.value.rad() > Mag::pow2(-20));
    }

    #[test]
    fn telescoping_values() {
        assert_eq!(telescoping_third(), q(1, 3));
        assert_eq!(telescoping_partial(1), q(1, 5));
        assert_eq!(telescoping_partial(2), q(26, 105));
    }

    #[test]
    fn leibniz_tail() {
        let p = policy();
        let v = leibniz_tail_sum(&p).unwrap();
        let expected = (&const_pi(&p).mul_i64(3) - &Real::from_i64(8, P)).div_i64(12);
        assert!(v.overlaps(&expected));
    }

    #[test]
    fn power_sum_at_zero() {
        // n = 1, x = 0: (lambda(4) - 1) / pi^4 with lambda(4) = pi^4/96
        let p = policy();
        let v = power_partial_fraction_sum(&Real::zero(P), 1, &p).unwrap().value;
        let pi4 = const_pi(&p).pow(4);
        let expected = (&pi4.div_i64(96) - &Real::one(P)).checked_div(&pi4).unwrap();
        assert!(v.overlaps(&expected));
    }

    #[test]
    fn odd_power_difference_cases() {
        let p = policy();
        let x = pi_times(1, 4, P);
        assert!(odd_power_difference_sum(&x, 1, &p).unwrap().value.contains_rational(&q(1, 2)));
        let zero = odd_power_difference_sum(&Real::zero(P), 3, &p).unwrap().value;
        assert!(zero.contains_rational(&q(0, 1)));
    }

    #[test]
    fn pi_squared_first_term_and_value() {
        let p = policy();
        let pi2 = const_pi(&p).sqr();
        assert!(pi_squared_series(0, &p).unwrap().value.overlaps(&pi2));
        assert!(pi_squared_series(-2, &p).unwrap().value.overlaps(&pi2));
        assert!(half_pi_sqrt_series(&p).unwrap().value.overlaps(&const_pi(&p).mul_2exp(-1)));
    }

    #[test]
    fn tanh_tan_difference_at_zero() {
        let v = tanh_tan_difference_sum(&Real::zero(P), &policy()).unwrap().value;
        assert!(v.contains_rational(&q(0, 1)));
    }

    #[test]
    fn products_at_zero_and_half_pi() {
        let p = policy();
        for v in [ProductVariant::Cos, ProductVariant::Cosh, ProductVariant::CoshCos] {
            assert!(cos_product(&Real::zero(P), v, &p).unwrap().value.contains_rational(&q(1, 1)));
        }
        let c = cos_product(&pi_times(1, 2, P), ProductVariant::Cos, &p).unwrap().value;
        assert!(c.contains_zero());
    }

    #[test]
    fn log_cosh_at_zero_and_domain() {
        let p = policy();
        for m in [LogCoshMethod::ProductLog, LogCoshMethod::EulerSeries, LogCoshMethod::ZetaSeries] {
            assert!(log_cosh(&Real::zero(P), m, &p).unwrap().value.contains_rational(&q(0, 1)));
        }
        let err = log_cosh(&Real::from_i64(2, P), LogCoshMethod::EulerSeries, &p).unwrap_err();
        assert!(matches!(err, Error::ConvergenceDomain(_)));
        assert!(log_cosh(&Real::from_i64(2, P), LogCoshMethod::ProductLog, &p).is_ok());
    }

    #[test]
    fn tanh_series_values() {
        let p = policy();
        assert!(tanh_series(&Real::zero(P), &p).unwrap().contains_rational(&q(0, 1)));
        let x = Real::ratio(1, 10, P);
        assert!(tanh_series(&x, &p).unwrap().overlaps(&crate::precision::tanh(&x)));
        assert!(tanh_series(&Real::from_i64(2, P), &p).is_err());
    }
}
