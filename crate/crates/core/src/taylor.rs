//! Truncated Taylor jets, derivative polynomials of `tan`, and the
//! derivative-side expressions checked against the partial-fraction sums.
//!
//! Derivatives always come from jet recurrences or exact polynomials; no
//! difference quotients anywhere.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numbers::bernoulli;
use crate::precision::{const_pi, factorial, tan, PrecisionPolicy, Rational, Real};
use crate::Error;

/// Taylor coefficients `f^(j)(a) / j!` for `j = 0..=order` at a center `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    center: Real,
    coeffs: Vec<Real>,
}

/// Binary operations accepted by [`jet_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Div,
    /// Squares the first operand; the second is ignored apart from the
    /// center check.
    Square,
}

impl Jet {
    pub fn new(center: Real, coeffs: Vec<Real>) -> Result<Self, Error> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a jet needs at least one coefficient".into()));
        }
        Ok(Jet { center, coeffs })
    }

    /// The constant function `c` to the given order.
    pub fn constant(center: Real, value: Real, order: usize) -> Self {
        let prec = value.prec();
        let mut coeffs = vec![Real::zero(prec); order + 1];
        coeffs[0] = value;
        Jet { center, coeffs }
    }

    pub fn center(&self) -> &Real {
        &self.center
    }

    pub fn coeffs(&self) -> &[Real] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Real {
        &self.coeffs[j]
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Jet of the derivative, one order shorter. A zeroth-order jet has no
    /// derivative information, so this fails there.
    pub fn derivative(&self) -> Result<Jet, Error> {
        if self.order() == 0 {
            return Err(Error::InvalidArgument("derivative of a zeroth-order jet".into()));
        }
        let coeffs = self.coeffs[1..].iter().enumerate().map(|(j, c)| c.mul_i64(j as i64 + 1)).collect();
        Ok(Jet { center: self.center.clone(), coeffs })
    }

    pub fn scale(&self, s: &Real) -> Jet {
        Jet { center: self.center.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add_constant(&self, s: &Real) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] = &out.coeffs[0] + s;
        out
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = (order + 1).min(self.coeffs.len());
        Jet { center: self.center.clone(), coeffs: self.coeffs[..n].to_vec() }
    }

    /// `sum_j coeffs[j] * h^j`, with `h` the offset from the center.
    pub fn eval_offset(&self, h: &Real) -> Real {
        let mut acc = self.coeffs.last().expect("non-empty").clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = &(&acc * h) + c;
        }
        acc
    }

    fn check_center(&self, other: &Jet) -> Result<(), Error> {
        if self.center != other.center {
            return Err(Error::InvalidArgument("jets expanded at different centers".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Jet) -> Result<Jet, Error> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Jet) -> Result<Jet, Error> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Jet, f: impl Fn(&Real, &Real) -> Real) -> Result<Jet, Error> {
        self.check_center(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect();
        Ok(Jet { center: self.center.clone(), coeffs })
    }

    /// Cauchy product truncated to the shorter order.
    pub fn mul(&self, other: &Jet) -> Result<Jet, Error> {
        self.check_center(other)?;
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(Real::zero(self.coeffs[0].prec()), |acc, i| {
                    &acc + &(&self.coeffs[i] * &other.coeffs[k - i])
                })
            })
            .collect();
        Ok(Jet { center: self.center.clone(), coeffs })
    }

    pub fn square(&self) -> Jet {
        self.mul(self).expect("a jet shares its own center")
    }

    /// Power-series division; the divisor's constant term must exclude zero.
    pub fn div(&self, other: &Jet) -> Result<Jet, Error> {
        self.check_center(other)?;
        let g0 = &other.coeffs[0];
        if g0.contains_zero() {
            return Err(Error::JetDivision);
        }
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut out: Vec<Real> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                acc = &acc - &(&other.coeffs[i] * &out[k - i]);
            }
            out.push(acc.checked_div(g0).map_err(|_| Error::JetDivision)?);
        }
        Ok(Jet { center: self.center.clone(), coeffs: out })
    }
}

/// Jet of `f(x) = x` at `a`: `[a, 1, 0, ...]`.
pub fn jet_lift_identity(a: &Real, order: usize) -> Jet {
    let prec = a.prec();
    let mut coeffs = vec![Real::zero(prec); order + 1];
    coeffs[0] = a.clone();
    if order >= 1 {
        coeffs[1] = Real::one(prec);
    }
    Jet { center: a.clone(), coeffs }
}

pub fn jet_arith(op: JetOp, f: &Jet, g: &Jet) -> Result<Jet, Error> {
    match op {
        JetOp::Add => f.add(g),
        JetOp::Sub => f.sub(g),
        JetOp::Mul => f.mul(g),
        JetOp::Div => f.div(g),
        JetOp::Square => {
            f.check_center(g)?;
            Ok(f.square())
        }
    }
}

/// Jet of `tan` at `a` from `t' = 1 + t^2`:
/// `c_(j+1) = [1 + T^2]_j / (j + 1)`.
pub fn jet_tan(a: &Real, order: usize) -> Result<Jet, Error> {
    let prec = a.prec();
    let mut c = Vec::with_capacity(order + 1);
    c.push(tan(a)?);
    for j in 0..order {
        let mut sq = Real::zero(prec);
        for i in 0..=j {
            sq = &sq + &(&c[i] * &c[j - i]);
        }
        if j == 0 {
            sq = &sq + &Real::one(prec);
        }
        c.push(sq.div_i64(j as i64 + 1));
    }
    Ok(Jet { center: a.clone(), coeffs: c })
}

/// Coefficients of `z^0, z^2, ..., z^(2K)` of `z cot z`, from the jet
/// quotient `cos z / (sin z / z)` at zero.
pub fn cot_series_coefficients(k: usize, policy: &PrecisionPolicy) -> Result<Vec<Real>, Error> {
    let prec = policy.working_bits() + 16;
    let order = 2 * k;
    let zero = Real::zero(prec);
    let mut cos_c = vec![Real::zero(prec); order + 1];
    let mut sinc_c = vec![Real::zero(prec); order + 1];
    for i in 0..=k {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        cos_c[2 * i] = Real::from_rational(&Rational::new(BigInt::from(sign), factorial(2 * i as u64)), prec);
        sinc_c[2 * i] =
            Real::from_rational(&Rational::new(BigInt::from(sign), factorial(2 * i as u64 + 1)), prec);
    }
    let q = Jet::new(zero.clone(), cos_c)?.div(&Jet::new(zero, sinc_c)?)?;
    Ok((0..=k).map(|i| q.coeffs[2 * i].with_prec(policy.working_bits())).collect())
}

/// Exact coefficient of `z^(2n)` in `z cot z`: `(-1)^n 4^n B_(2n) / (2n)!`.
pub fn cot_series_exact(n: usize) -> Rational {
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let num = BigInt::from(sign) * (BigInt::one() << (2 * n));
    bernoulli(2 * n) * Rational::new(num, factorial(2 * n as u64))
}

/// Whether every jet coefficient of `z cot z` up to `z^(2K)` encloses the
/// Bernoulli closed form.
pub fn cot_series_check(k: usize, policy: &PrecisionPolicy) -> Result<bool, Error> {
    if k == 0 {
        return Err(Error::InvalidArgument("cot_series_check needs K >= 1".into()));
    }
    let coeffs = cot_series_coefficients(k, policy)?;
    Ok(coeffs.iter().enumerate().all(|(n, c)| c.contains_rational(&cot_series_exact(n))))
}

/// Integer polynomial `P_k` with `d^k/dx^k tan x = P_k(tan x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativePolynomial {
    /// `coeffs[i]` multiplies `t^i`.
    coeffs: Vec<BigInt>,
}

impl DerivativePolynomial {
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// `(1 + t^2) P'(t)`.
    pub fn next(&self) -> DerivativePolynomial {
        let deriv: Vec<BigInt> =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
        let mut out = vec![BigInt::zero(); deriv.len() + 2];
        for (i, c) in deriv.iter().enumerate() {
            out[i] += c;
            out[i + 2] += c;
        }
        while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
            out.pop();
        }
        DerivativePolynomial { coeffs: out }
    }

    pub fn eval_integer(&self, t: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
    }

    pub fn eval(&self, t: &Real) -> Real {
        let prec = t.prec();
        self.coeffs.iter().rev().fold(Real::zero(prec), |acc, c| &(&acc * t) + &Real::from_bigint(c, prec))
    }
}

pub fn tan_derivative_poly(k: usize) -> DerivativePolynomial {
    let mut p = DerivativePolynomial { coeffs: vec![BigInt::zero(), BigInt::one()] };
    for _ in 0..k {
        p = p.next();
    }
    p
}

/// `(pi/4)^(2n-1) / (2n-2)! * P_(2n-2)(1)`, the derivative side of the
/// Hurwitz zeta identity at `x = pi/4`.
pub fn theorem23_lhs(n: u32, policy: &PrecisionPolicy) -> Result<Real, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("theorem23_lhs needs n >= 1".into()));
    }
    let k = 2 * n as usize - 2;
    let p1 = tan_derivative_poly(k).eval_integer(&BigInt::one());
    let w = policy.working_bits() + 16;
    let quarter_pi = const_pi(&PrecisionPolicy::with_bits(w)?).mul_2exp(-2);
    let coeff = Rational::new(p1, factorial(k as u64));
    Ok(quarter_pi.pow(2 * n - 1).mul_rational(&coeff).with_prec(policy.working_bits()))
}

/// `2^(1-2n) / (2n-2)! * tan^(2n-2)(x)`, read off the tan jet.
pub fn scaled_tan_derivative(n: u32, x: &Real, policy: &PrecisionPolicy) -> Result<Real, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("scaled_tan_derivative needs n >= 1".into()));
    }
    let k = 2 * n as usize - 2;
    let jet = jet_tan(&x.with_prec(policy.working_bits() + 16), k)?;
    Ok(jet.coeff(k).mul_2exp(1 - 2 * n as i64).with_prec(policy.working_bits()))
}

/// `1/(8nx) d/dx ... 1/(16x) d/dx 1/(8x) d/dx [tan x/(8x) + 1/(4x^2 - pi^2)]`.
///
/// Builds the jet of the bracket to order `n` at `x` and lets each stage
/// consume one order: differentiate, then divide by the jet of `8 j x`.
pub fn iterated_operator_lhs(n: u32, x: &Real, policy: &PrecisionPolicy) -> Result<Real, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("iterated_operator_lhs needs n >= 1".into()));
    }
    let w = policy.working_bits() + 16 + 4 * n;
    let x = x.with_prec(w);
    if x.contains_zero() {
        return Err(Error::PoleStraddle("tan x / (8x)"));
    }
    let order = n as usize;
    let pi = const_pi(&PrecisionPolicy::with_bits(w)?);
    let id = jet_lift_identity(&x, order);
    let t = jet_tan(&x, order)?;

    let first = t.div(&id.scale(&Real::from_i64(8, w)))?;
    let quad = id.square().scale(&Real::from_i64(4, w)).add_constant(&-pi.sqr());
    if quad.coeff(0).contains_zero() {
        return Err(Error::PoleStraddle("1/(4x^2 - pi^2)"));
    }
    let one = Jet::constant(x.clone(), Real::one(w), order);
    let mut h = first.add(&one.div(&quad)?)?;

    for j in 1..=n as i64 {
        h = h.derivative()?;
        let denom = jet_lift_identity(&x, h.order()).scale(&Real::from_i64(8 * j, w));
        h = h.div(&denom)?;
    }
    Ok(h.coeff(0).with_prec(policy.working_bits()))
}
