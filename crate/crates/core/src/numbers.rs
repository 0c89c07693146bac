//! Bernoulli and Euler numbers, even zeta values, the odd-denominator
//! lambda function and Hurwitz zeta at integer arguments.
//!
//! The Euler numbers here are the coefficients of `2/(e^z + 1)`, so
//! `E_1 = -1/2`, `E_3 = 1/4`, ... and every even index past zero vanishes.
//! They are not the secant numbers.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::precision::{factorial, Mag, PrecisionPolicy, Rational, Real};
use crate::Error;

/// Append-only memo of exact values indexed from zero.
#[derive(Debug)]
struct Table {
    values: RwLock<Vec<Rational>>,
    step: fn(&[Rational]) -> Rational,
}

impl Table {
    fn new(step: fn(&[Rational]) -> Rational) -> Self {
        Table { values: RwLock::new(vec![Rational::one()]), step }
    }

    fn get(&self, n: usize) -> Rational {
        {
            let values = self.values.read().expect("table lock poisoned");
            if let Some(v) = values.get(n) {
                return v.clone();
            }
        }
        let mut values = self.values.write().expect("table lock poisoned");
        while values.len() <= n {
            let next = (self.step)(&values);
            values.push(next);
        }
        values[n].clone()
    }

    fn prefix(&self, n: usize) -> Vec<Rational> {
        self.get(n);
        self.values.read().expect("table lock poisoned")[..=n].to_vec()
    }
}

/// Memoized Bernoulli numbers `B_0, B_1, ...` with `B_1 = -1/2`.
#[derive(Debug)]
pub struct BernoulliTable(Table);

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable(Table::new(bernoulli_step))
    }

    pub fn get(&self, n: usize) -> Rational {
        self.0.get(n)
    }

    /// `B_0 ..= B_n`.
    pub fn values(&self, n: usize) -> Vec<Rational> {
        self.0.prefix(n)
    }
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

/// Memoized Euler numbers of `2/(e^z + 1)`.
#[derive(Debug)]
pub struct EulerTable(Table);

impl EulerTable {
    pub fn new() -> Self {
        EulerTable(Table::new(euler_step))
    }

    pub fn get(&self, n: usize) -> Rational {
        self.0.get(n)
    }

    /// `E_0 ..= E_n`.
    pub fn values(&self, n: usize) -> Vec<Rational> {
        self.0.prefix(n)
    }
}

impl Default for EulerTable {
    fn default() -> Self {
        Self::new()
    }
}

// sum_{k=0}^{m} C(m+1, k) B_k = 0
fn bernoulli_step(prev: &[Rational]) -> Rational {
    let m = prev.len() as u64;
    let mut sum = Rational::zero();
    let mut c = BigInt::one(); // C(m+1, k)
    for (k, b) in prev.iter().enumerate() {
        if !b.is_zero() {
            sum += b * Rational::from_integer(c.clone());
        }
        c = c * (m + 1 - k as u64) / (k as u64 + 1);
    }
    -sum / Rational::from_integer(BigInt::from(m + 1))
}

// 2 E_n = -sum_{i<n} C(n, i) E_i
fn euler_step(prev: &[Rational]) -> Rational {
    let n = prev.len() as u64;
    let mut sum = Rational::zero();
    let mut c = BigInt::one(); // C(n, i)
    for (i, e) in prev.iter().enumerate() {
        if !e.is_zero() {
            sum += e * Rational::from_integer(c.clone());
        }
        c = c * (n - i as u64) / (i as u64 + 1);
    }
    -sum / Rational::from_integer(BigInt::from(2))
}

fn bernoulli_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(BernoulliTable::new)
}

fn euler_table() -> &'static EulerTable {
    static TABLE: OnceLock<EulerTable> = OnceLock::new();
    TABLE.get_or_init(EulerTable::new)
}

/// Exact `B_n` from the generating function `z/(e^z - 1)`.
pub fn bernoulli(n: usize) -> Rational {
    bernoulli_table().get(n)
}

/// Exact `E_n` from the generating function `2/(e^z + 1)`.
pub fn euler(n: usize) -> Rational {
    euler_table().get(n)
}

/// `E_n` through Bernoulli numbers: `-2 (2^(n+1) - 1) / (n + 1) * B_(n+1)`.
pub fn euler_from_bernoulli(n: usize) -> Rational {
    let p = (BigInt::one() << (n + 1)) - 1u32;
    let factor = Rational::new(-2 * p, BigInt::from(n + 1));
    factor * bernoulli(n + 1)
}

fn guard_bits(policy: &PrecisionPolicy) -> u32 {
    policy.working_bits() + 32
}

/// `zeta(2n) = (-1)^(n-1) (2 pi)^(2n) B_(2n) / (2 (2n)!)`.
pub fn zeta_even(n: u32, policy: &PrecisionPolicy) -> Result<Real, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("zeta_even needs n >= 1".into()));
    }
    let w = guard_bits(policy) + 2 * n;
    Ok(zeta_even_at(n, w).with_prec(policy.working_bits()))
}

fn zeta_even_at(n: u32, w: u32) -> Real {
    let two_pi = crate::precision::pi_bits(w).mul_2exp(1);
    let mut coeff = bernoulli(2 * n as usize) / Rational::from_integer(2 * factorial(2 * n as u64));
    if n.is_multiple_of(2) {
        coeff = -coeff;
    }
    two_pi.pow(2 * n).mul_rational(&coeff)
}

/// `lambda(2n) = sum_{k>=0} (2k+1)^(-2n) = (1 - 4^(-n)) zeta(2n)`.
pub fn lambda_odd_denominator(n: u32, policy: &PrecisionPolicy) -> Result<Real, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("lambda_odd_denominator needs n >= 1".into()));
    }
    let w = guard_bits(policy) + 2 * n;
    Ok(lambda_even_at(n, w).with_prec(policy.working_bits()))
}

pub(crate) fn lambda_even_at(n: u32, w: u32) -> Real {
    let four_n = BigInt::one() << (2 * n as usize);
    let factor = Rational::new(&four_n - 1u32, four_n);
    zeta_even_at(n, w).mul_rational(&factor)
}

/// Hurwitz zeta `sum_{k>=0} (k + a)^(-s)` for integer `s >= 2` and
/// rational `0 < a <= 1`.
///
/// Sums the first `M` terms directly and the rest by Euler-Maclaurin. The
/// remainder after the last correction term `T_q` is at most `|T_q|`, which
/// holds because every derivative of `(t + a)^(-s)` keeps one sign on
/// `[M, inf)`.
pub fn hurwitz_zeta(s: u32, a: &Rational, policy: &PrecisionPolicy) -> Result<Real, Error> {
    if s < 2 {
        return Err(Error::InvalidArgument(format!("hurwitz_zeta needs s >= 2, got {s}")));
    }
    if !a.is_positive() || *a > Rational::one() {
        return Err(Error::InvalidArgument(format!("hurwitz_zeta needs 0 < a <= 1, got {a}")));
    }
    let w = guard_bits(policy);
    let target = Mag::pow2(-(w as i64));
    let mut m = (w / 8 + s) as u64;
    loop {
        if let Some(v) = hurwitz_em(s, a, m, w, target) {
            return Ok(v.with_prec(policy.working_bits()));
        }
        m *= 2;
    }
}

fn hurwitz_em(s: u32, a: &Rational, m: u64, w: u32, target: Mag) -> Option<Real> {
    let mut sum = Real::zero(w);
    for k in 0..m {
        let base = Real::from_rational(&(a + Rational::from_integer(BigInt::from(k))), w);
        sum = &sum + &base.pow(s).recip().ok()?;
    }
    let x = Real::from_rational(&(a + Rational::from_integer(BigInt::from(m))), w);
    let x_inv = x.recip().ok()?;
    let x_inv2 = x_inv.sqr();
    let x_pow = x_inv.pow(s - 1); // X^(1-s)
                                  // integral and half-endpoint terms
    sum = &sum + &x_pow.div_i64(s as i64 - 1);
    sum = &sum + &(&x_pow * &x_inv).mul_2exp(-1);

    // X^(1-s-2j) and the rising factorial s (s+1) ... (s+2j-2)
    let mut xp = &x_pow * &x_inv2; // j = 1: X^(-s-1)
    let mut rising = BigInt::from(s);
    let mut prev: Option<Mag> = None;
    for j in 1u64.. {
        let coeff = bernoulli(2 * j as usize) / Rational::from_integer(factorial(2 * j));
        let term = xp.mul_rational(&(coeff * Rational::from_integer(rising.clone())));
        let size = term.abs_upper();
        sum = &sum + &term;
        if size < target {
            return Some(sum.add_error(size));
        }
        if let Some(p) = prev {
            if size >= p {
                // asymptotic series turned around before reaching the target
                return None;
            }
        }
        prev = Some(size);
        xp = &xp * &x_inv2;
        rising = rising * (s as u64 + 2 * j - 1) * (s as u64 + 2 * j);
    }
    unreachable!()
}
