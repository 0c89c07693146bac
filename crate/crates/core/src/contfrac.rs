//! Generalized continued fractions `b0 + a1/(b1 + a2/(b2 + ...))` with exact
//! convergents, and the four fractions for `pi` and its relatives.
//!
//! Convergents are carried as integers. Each level is multiplied through by
//! the common denominator `c_k` of its terms, which leaves every convergent
//! value unchanged, so the forward recurrence only ever adds and multiplies
//! big integers. The textbook `p_k`, `q_k` are recovered by dividing out the
//! accumulated scale.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::precision::{eval_elementary, pi_times, Elementary, PrecisionPolicy, Rational, Real};
use crate::Error;

type TermFn = Arc<dyn Fn(usize) -> (Rational, Rational) + Send + Sync>;

/// A continued fraction with a lazily generated, deterministic term list.
#[derive(Clone)]
pub struct Gcf {
    leading: Rational,
    terms: TermFn,
}

impl fmt::Debug for Gcf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<_> = (1..=3).map(|k| self.term(k)).collect();
        f.debug_struct("Gcf").field("leading", &self.leading).field("first_terms", &shown).finish()
    }
}

impl Gcf {
    /// `terms(k)` returns `(a_k, b_k)` for `k >= 1`.
    pub fn new(
        leading: Rational,
        terms: impl Fn(usize) -> (Rational, Rational) + Send + Sync + 'static,
    ) -> Self {
        Gcf { leading, terms: Arc::new(terms) }
    }

    pub fn leading(&self) -> &Rational {
        &self.leading
    }

    /// `(a_k, b_k)`; panics on a zero partial numerator.
    pub fn term(&self, k: usize) -> (Rational, Rational) {
        assert!(k >= 1, "continued fraction terms start at k = 1");
        let t = (self.terms)(k);
        assert!(!t.0.is_zero(), "partial numerator a_{k} is zero");
        t
    }

    /// Exact convergents from index 0 on.
    pub fn convergents(&self) -> Convergents<'_> {
        let (u, v) = split(&self.leading);
        Convergents {
            cf: self,
            k: 0,
            p: (BigInt::one(), u),
            q: (BigInt::zero(), v.clone()),
            scale: (BigInt::one(), v.clone()),
            last_c: v,
        }
    }
}

fn split(r: &Rational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Convergent number `index`, stored as the integer pair of the scaled
/// recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    /// Scaled numerator `P_k = S_k p_k`.
    pub p: BigInt,
    /// Scaled denominator `Q_k = S_k q_k`.
    pub q: BigInt,
    /// Accumulated scale `S_k`; one for integer fractions.
    pub scale: BigInt,
}

impl Convergent {
    pub fn is_singular(&self) -> bool {
        self.q.is_zero()
    }

    pub fn value(&self) -> Option<Rational> {
        (!self.is_singular()).then(|| Rational::new(self.p.clone(), self.q.clone()))
    }

    /// `p/q` enclosed at `prec` bits, `None` when singular.
    pub fn to_real(&self, prec: u32) -> Option<Real> {
        if self.is_singular() {
            return None;
        }
        let p = Real::from_bigint(&self.p, prec + 8);
        let q = Real::from_bigint(&self.q, prec + 8);
        Some((&p / &q).with_prec(prec))
    }

    /// The textbook `p_k`.
    pub fn numerator(&self) -> Rational {
        Rational::new(self.p.clone(), self.scale.clone())
    }

    /// The textbook `q_k`.
    pub fn denominator(&self) -> Rational {
        Rational::new(self.q.clone(), self.scale.clone())
    }
}

/// Iterator over the exact convergents of a [`Gcf`]; never ends.
pub struct Convergents<'a> {
    cf: &'a Gcf,
    k: usize,
    /// `(P_(k-1), P_k)`
    p: (BigInt, BigInt),
    q: (BigInt, BigInt),
    scale: (BigInt, BigInt),
    last_c: BigInt,
}

impl Iterator for Convergents<'_> {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        if self.k > 0 {
            let (a, b) = self.cf.term(self.k);
            // c_k clears both denominators: P_k = c_k b_k P_(k-1) + c_k c_(k-1) a_k P_(k-2)
            let c = a.denom().lcm(b.denom());
            let bb = (b * Rational::from_integer(c.clone())).to_integer();
            let aa = (a * Rational::from_integer(&c * &self.last_c)).to_integer();
            let p = &bb * &self.p.1 + &aa * &self.p.0;
            let q = &bb * &self.q.1 + &aa * &self.q.0;
            self.p = (std::mem::take(&mut self.p.1), p);
            self.q = (std::mem::take(&mut self.q.1), q);
            let s = &self.scale.1 * &c;
            self.scale = (std::mem::take(&mut self.scale.1), s);
            self.last_c = c;
        }
        let out = Convergent {
            index: self.k,
            p: self.p.1.clone(),
            q: self.q.1.clone(),
            scale: self.scale.1.clone(),
        };
        self.k += 1;
        Some(out)
    }
}

/// What is kept of a run to some depth: the final convergents and the
/// singular indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentSequence {
    pub depth: usize,
    pub last: Convergent,
    pub last_nonsingular: Option<Convergent>,
    pub previous_nonsingular: Option<Convergent>,
    pub singular: Vec<usize>,
}

/// A continued-fraction value. The radius is the gap between the last two
/// non-singular convergents, a convergence estimate rather than a proof.
#[derive(Clone, Debug, PartialEq)]
pub struct CfEvaluation {
    pub value: Real,
    pub rigorous: bool,
    pub sequence: ConvergentSequence,
}

/// Runs the recurrence to `depth` and reports the last non-singular
/// convergent.
pub fn eval_gcf(cf: &Gcf, depth: usize, policy: &PrecisionPolicy) -> Result<CfEvaluation, Error> {
    let mut singular = Vec::new();
    let mut last_ns: Option<Convergent> = None;
    let mut prev_ns: Option<Convergent> = None;
    let mut last = None;
    for c in cf.convergents().take(depth + 1) {
        if c.is_singular() {
            singular.push(c.index);
        } else {
            prev_ns = last_ns.replace(c.clone());
        }
        last = Some(c);
    }
    let last = last.expect("depth + 1 >= 1 convergents");
    let prec = policy.working_bits();
    let Some(top) = &last_ns else {
        return Err(Error::SingularConvergent(depth));
    };
    let mut value = top.to_real(prec).expect("non-singular");
    if let Some(prev) = &prev_ns {
        let pv = prev.to_real(prec).expect("non-singular");
        let gap = (&value - &pv).abs_upper();
        value = value.add_error(gap);
    }
    Ok(CfEvaluation {
        value,
        rigorous: false,
        sequence: ConvergentSequence {
            depth,
            last,
            last_nonsingular: last_ns,
            previous_nonsingular: prev_ns,
            singular,
        },
    })
}

/// Convergent values at the requested depths (ascending), in one pass.
/// Singular convergents give `None`.
pub fn sample_convergents(cf: &Gcf, depths: &[usize], prec: u32) -> Vec<Option<Real>> {
    let Some(&max) = depths.iter().max() else {
        return Vec::new();
    };
    let mut out = vec![None; depths.len()];
    for c in cf.convergents().take(max + 1) {
        for (slot, &d) in out.iter_mut().zip(depths) {
            if d == c.index {
                *slot = c.to_real(prec);
            }
        }
    }
    out
}

/// Checks `p_k q_(k-1) - p_(k-1) q_k = (-1)^(k-1) a_1 ... a_k` for
/// `k = 1..=depth` on the textbook convergents.
pub fn determinant_identity_holds(cf: &Gcf, depth: usize) -> bool {
    let mut it = cf.convergents();
    let mut prev = it.next().expect("infinite");
    let mut prod = Rational::one();
    for k in 1..=depth {
        let cur = it.next().expect("infinite");
        prod *= cf.term(k).0;
        let lhs = cur.numerator() * prev.denominator() - prev.numerator() * cur.denominator();
        let rhs = if k % 2 == 1 { prod.clone() } else { -prod.clone() };
        if lhs != rhs {
            return false;
        }
        prev = cur;
    }
    true
}

/// `pi = 4/(1 + 1^2/(2 + 3^2/(2 + 5^2/(2 + ...))))`.
pub fn cf_pi_eq5() -> Gcf {
    Gcf::new(int(0), |k| if k == 1 { (int(4), int(1)) } else { (int((2 * k as i64 - 3).pow(2)), int(2)) })
}

/// `pi = 3 + 1^2/(6 + 3^2/(6 + 5^2/(6 + ...)))`.
pub fn cf_pi_eq6() -> Gcf {
    Gcf::new(int(3), |k| (int((2 * k as i64 - 1).pow(2)), int(6)))
}

/// `pi/4 = 2/3 + 1/(5 + 5^2/(2 + 7^2/(2 + 9^2/(2 + ...))))`.
pub fn cf_quarter_pi_thm21() -> Gcf {
    Gcf::new(Rational::new(2.into(), 3.into()), |k| {
        if k == 1 {
            (int(1), int(5))
        } else {
            (int((2 * k as i64 + 1).pow(2)), int(2))
        }
    })
}

/// The fraction with leading term `N^2 + 1`, `N = 2n + 1`, and term pairs
/// `a_(2j-1) = ((2j-1)^2 N^2 + 1)^2`, `b_(2j-1) = -2`,
/// `a_(2j) = ((2j-1)^2 N^2 - 1)^2`, `b_(2j) = 8 j N^2 + 2`.
pub fn cf_thm26(n: u32) -> Gcf {
    assert!(n >= 1, "cf_thm26 needs n >= 1");
    let n2 = BigInt::from(2 * n as u64 + 1).pow(2);
    let leading = Rational::from_integer(&n2 + 1u32);
    Gcf::new(leading, move |k| {
        let j = (k as u64).div_ceil(2);
        let base = BigInt::from((2 * j - 1).pow(2)) * &n2;
        if k % 2 == 1 {
            (Rational::from_integer((base + 1u32).pow(2)), int(-2))
        } else {
            let b = BigInt::from(8 * j) * &n2 + 2u32;
            (Rational::from_integer((base - 1u32).pow(2)), Rational::from_integer(b))
        }
    })
}

/// `((pi/4) (tanh x - tan x) / N)^-1` with `x = pi/(2N)`, `N = 2n + 1`,
/// from the elementary-function kernels.
pub fn thm26_target(n: u32, policy: &PrecisionPolicy) -> Result<Real, Error> {
    let big_n = 2 * n as i64 + 1;
    let w = policy.working_bits() + 16;
    let inner = PrecisionPolicy::with_bits(w)?;
    let x = pi_times(1, 2 * big_n, w);
    let th = eval_elementary(Elementary::Tanh, &x, &inner)?;
    let t = eval_elementary(Elementary::Tan, &x, &inner)?;
    let s = (&th - &t).mul_2exp(-2).div_i64(big_n);
    let s = &s * &pi_times(1, 1, w);
    Ok(s.recip()?.with_prec(policy.working_bits()))
}

/// One way of reading the identity: which leading term and which sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Reading {
    /// Leading term `N^2 + 1` as printed, otherwise `N^2`.
    pub printed_leading: bool,
    /// Compare with the signed reciprocal, otherwise its absolute value.
    pub signed_target: bool,
}

impl Reading {
    pub const ALL: [Reading; 4] = [
        Reading { printed_leading: true, signed_target: true },
        Reading { printed_leading: true, signed_target: false },
        Reading { printed_leading: false, signed_target: true },
        Reading { printed_leading: false, signed_target: false },
    ];

    pub fn label(&self) -> &'static str {
        match (self.printed_leading, self.signed_target) {
            (true, true) => "leading N^2+1, signed",
            (true, false) => "leading N^2+1, absolute",
            (false, true) => "leading N^2, signed",
            (false, false) => "leading N^2, absolute",
        }
    }
}

/// Result of comparing one reading with the oracle.
#[derive(Clone, Debug, PartialEq)]
pub struct ReadingOutcome {
    pub reading: Reading,
    pub cf_estimate: Real,
    pub target: Real,
    /// Upper bound on `|cf_estimate - target|` as a float.
    pub gap: f64,
    pub matches: bool,
}

/// Which same-parity subsequence of convergents was used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Thm26Report {
    pub n: u32,
    pub depth: usize,
    pub oracle: Real,
    pub parity: Parity,
    /// `|v_last - v_previous|` within the chosen parity.
    pub stability: f64,
    pub stabilized: bool,
    pub singular_count: usize,
    pub outcomes: Vec<ReadingOutcome>,
}

impl Thm26Report {
    pub fn matching(&self) -> impl Iterator<Item = &ReadingOutcome> {
        self.outcomes.iter().filter(|o| o.matches)
    }

    /// Whether the stated form (leading `N^2 + 1`, signed) matched.
    pub fn printed_reading_verified(&self) -> bool {
        self.outcomes.iter().any(|o| o.reading == Reading::ALL[0] && o.matches)
    }
}

/// Agreement required between the stabilized convergents and the oracle.
pub const THM26_AGREEMENT: f64 = 1e-8;

/// Evaluates all four readings against the oracle at the given depth.
///
/// The odd and even convergents approach the limit at very different
/// speeds, so each parity is tracked on its own and the one whose last two
/// members agree more closely is used. Singular convergents are skipped and
/// counted.
pub fn thm26_protocol(n: u32, depth: usize, policy: &PrecisionPolicy) -> Result<Thm26Report, Error> {
    let cf = cf_thm26(n);
    let prec = policy.working_bits();
    let oracle = thm26_target(n, policy)?;
    let mut last: [Option<Convergent>; 2] = [None, None];
    let mut prev: [Option<Convergent>; 2] = [None, None];
    let mut singular_count = 0;
    for c in cf.convergents().take(depth + 1) {
        if c.is_singular() {
            singular_count += 1;
            continue;
        }
        let slot = c.index % 2;
        prev[slot] = last[slot].replace(c);
    }
    let spread = |slot: usize| -> Option<(Real, f64)> {
        let a = last[slot].as_ref()?.to_real(prec)?;
        let b = prev[slot].as_ref()?.to_real(prec)?;
        let d = (&a - &b).abs_upper().to_f64();
        Some((a, d))
    };
    let (odd, even) = (spread(1), spread(0));
    let (parity, (estimate, stability)) = match (odd, even) {
        (Some(o), Some(e)) => {
            if o.1 <= e.1 {
                (Parity::Odd, o)
            } else {
                (Parity::Even, e)
            }
        }
        (Some(o), None) => (Parity::Odd, o),
        (None, Some(e)) => (Parity::Even, e),
        (None, None) => return Err(Error::SingularConvergent(depth)),
    };
    let stabilized = stability <= THM26_AGREEMENT;
    let outcomes = Reading::ALL
        .iter()
        .map(|&reading| {
            let cf_estimate =
                if reading.printed_leading { estimate.clone() } else { &estimate - &Real::one(prec) };
            let target = if reading.signed_target { oracle.clone() } else { oracle.abs() };
            let gap = (&cf_estimate - &target).abs_upper().to_f64();
            let matches = stabilized && gap <= THM26_AGREEMENT;
            ReadingOutcome { reading, cf_estimate, target, gap, matches }
        })
        .collect();
    Ok(Thm26Report { n, depth, oracle, parity, stability, stabilized, singular_count, outcomes })
}

/// The convergent `k` of a fraction, as an exact rational.
pub fn convergent_value(cf: &Gcf, k: usize) -> Option<Rational> {
    cf.convergents().nth(k).and_then(|c| c.value())
}
