//! Single values on demand: constants, exact numbers, series and fractions.

use eulerprod_core::contfrac::{cf_quarter_pi_thm21, eval_gcf};
use eulerprod_core::numbers::{bernoulli, euler, hurwitz_zeta, zeta_even};
use eulerprod_core::precision::parse_decimal;
use eulerprod_core::series::{
    cos_product, half_pi_sqrt_series, leibniz_tail_sum, log_cosh, odd_partial_fraction_sum,
    odd_partial_fraction_sum_direct, odd_power_difference_sum, pi_squared_series, power_partial_fraction_sum,
    tanh_series, tanh_tan_difference_sum, telescoping_partial, telescoping_third, LogCoshMethod,
    ProductVariant, SeriesResult,
};
use eulerprod_core::{const_pi, PrecisionPolicy, Rational, Real};
use serde::Serialize;

use crate::catalog::Point;
use crate::report::{sci, Ball};
use crate::UsageError;

/// What `compute` was asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Pi,
    QuarterPiCf,
    Euler(usize),
    Bernoulli(usize),
    Zeta2n(u32),
    Hurwitz { s: u32, a: String },
    Series { id: String, params: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Value {
    Exact { exact: String },
    Ball(Ball),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Computed {
    pub target: String,
    pub value: Value,
    pub provenance: String,
}

impl Computed {
    fn exact(target: String, q: &Rational, provenance: &str) -> Self {
        Computed { target, value: Value::Exact { exact: q.to_string() }, provenance: provenance.into() }
    }

    fn ball(target: String, r: &Real, provenance: String) -> Self {
        Computed { target, value: Value::Ball(Ball::of(r)), provenance }
    }

    fn series(target: String, r: &SeriesResult) -> Self {
        let provenance =
            format!("{}, {} terms, tail bound {}", r.strategy.name(), r.terms_used, sci(r.tail_bound));
        Computed::ball(target, &r.value, provenance)
    }

    /// The value on the first line, provenance on the second.
    pub fn to_text(&self) -> String {
        match &self.value {
            Value::Exact { exact } => format!("{exact}\nprovenance: {}\n", self.provenance),
            Value::Ball(b) => format!("{b}\nprovenance: {}\n", self.provenance),
        }
    }
}

fn bad(msg: impl Into<String>) -> UsageError {
    UsageError::InvalidArgument(msg.into())
}

fn core(e: eulerprod_core::Error) -> UsageError {
    bad(e.to_string())
}

fn rational(s: &str) -> Result<Rational, UsageError> {
    let parsed = match s.split_once('/') {
        Some((n, d)) => match (n.trim().parse(), d.trim().parse()) {
            (Ok(n), Ok(d)) if d != 0.into() => Some(Rational::new(n, d)),
            _ => None,
        },
        None => parse_decimal(s),
    };
    parsed.ok_or_else(|| bad(format!("not a rational number: {s:?}")))
}

fn point(s: &str, bits: u32) -> Result<Real, UsageError> {
    if let Some(p) = Point::parse(s) {
        return Ok(p.real(bits));
    }
    Ok(Real::from_rational(&rational(s)?, bits))
}

fn int<T: std::str::FromStr>(s: &str) -> Result<T, UsageError> {
    s.parse().map_err(|_| bad(format!("not an integer: {s:?}")))
}

fn arity(id: &str, params: &[String], want: usize, usage: &str) -> Result<(), UsageError> {
    if params.len() == want {
        Ok(())
    } else {
        Err(bad(format!("series {id} takes {usage}")))
    }
}

/// Names accepted by `compute series`, with their parameters.
pub const SERIES: &[(&str, &str)] = &[
    ("odd-partial-fraction", "X"),
    ("odd-partial-fraction-direct", "X TERMS"),
    ("telescoping", "[K]"),
    ("leibniz-tail", ""),
    ("power-partial-fraction", "N X"),
    ("odd-power-difference", "N X"),
    ("pi-squared", "N"),
    ("half-pi-sqrt", ""),
    ("tanh-tan", "X"),
    ("cos-product", "cos|cosh|cosh-cos X"),
    ("log-cosh", "product|euler|zeta X"),
    ("tanh-series", "X"),
];

fn series(id: &str, params: &[String], p: &PrecisionPolicy) -> Result<Computed, UsageError> {
    let bits = p.working_bits();
    let usage = SERIES
        .iter()
        .find(|(name, _)| *name == id)
        .map(|(_, u)| if u.is_empty() { "no parameters" } else { u })
        .ok_or_else(|| bad(format!("unknown series {id:?}")))?;
    let target = std::iter::once(id.to_string()).chain(params.iter().cloned()).collect::<Vec<_>>().join(" ");
    let r = match id {
        "telescoping" => {
            return match params {
                [] => Ok(Computed::exact(target, &telescoping_third(), "closed form")),
                [k] => Ok(Computed::exact(target, &telescoping_partial(int(k)?), "exact partial sum")),
                _ => Err(bad(format!("series {id} takes {usage}"))),
            };
        }
        "leibniz-tail" => {
            arity(id, params, 0, usage)?;
            let v = leibniz_tail_sum(p).map_err(core)?;
            return Ok(Computed::ball(target, &v, "zeta-accelerated".into()));
        }
        "tanh-series" => {
            arity(id, params, 1, usage)?;
            let v = tanh_series(&point(&params[0], bits)?, p).map_err(core)?;
            return Ok(Computed::ball(target, &v, "geometric-remainder".into()));
        }
        "odd-partial-fraction" => {
            arity(id, params, 1, usage)?;
            odd_partial_fraction_sum(&point(&params[0], bits)?, p)
        }
        "odd-partial-fraction-direct" => {
            arity(id, params, 2, usage)?;
            odd_partial_fraction_sum_direct(&point(&params[0], bits)?, int(&params[1])?, p)
        }
        "power-partial-fraction" | "odd-power-difference" => {
            arity(id, params, 2, usage)?;
            let (n, x) = (int(&params[0])?, point(&params[1], bits)?);
            if id == "power-partial-fraction" {
                power_partial_fraction_sum(&x, n, p)
            } else {
                odd_power_difference_sum(&x, n, p)
            }
        }
        "pi-squared" => {
            arity(id, params, 1, usage)?;
            pi_squared_series(int(&params[0])?, p)
        }
        "half-pi-sqrt" => {
            arity(id, params, 0, usage)?;
            half_pi_sqrt_series(p)
        }
        "tanh-tan" => {
            arity(id, params, 1, usage)?;
            tanh_tan_difference_sum(&point(&params[0], bits)?, p)
        }
        "cos-product" => {
            arity(id, params, 2, usage)?;
            let variant = match params[0].as_str() {
                "cos" => ProductVariant::Cos,
                "cosh" => ProductVariant::Cosh,
                "cosh-cos" => ProductVariant::CoshCos,
                v => return Err(bad(format!("unknown product variant {v:?}"))),
            };
            cos_product(&point(&params[1], bits)?, variant, p)
        }
        "log-cosh" => {
            arity(id, params, 2, usage)?;
            let method = match params[0].as_str() {
                "product" => LogCoshMethod::ProductLog,
                "euler" => LogCoshMethod::EulerSeries,
                "zeta" => LogCoshMethod::ZetaSeries,
                m => return Err(bad(format!("unknown log cosh method {m:?}"))),
            };
            log_cosh(&point(&params[1], bits)?, method, p)
        }
        _ => unreachable!("listed in SERIES"),
    };
    Ok(Computed::series(target, &r.map_err(core)?))
}

pub fn compute(target: &Target, policy: &PrecisionPolicy, depth: usize) -> Result<Computed, UsageError> {
    let bits = policy.working_bits();
    Ok(match target {
        Target::Pi => Computed::ball("pi".into(), &const_pi(policy), format!("Machin formula, {bits} bits")),
        Target::QuarterPiCf => {
            let r = eval_gcf(&cf_quarter_pi_thm21(), depth, policy).map_err(core)?;
            let provenance = format!(
                "continued fraction to depth {depth}, {} singular convergents; radius is the last-step \
                 difference, not a rigorous bound",
                r.sequence.singular.len()
            );
            Computed::ball("quarter-pi-cf".into(), &r.value, provenance)
        }
        Target::Euler(n) => Computed::exact(format!("euler {n}"), &euler(*n), "exact recurrence"),
        Target::Bernoulli(n) => Computed::exact(format!("bernoulli {n}"), &bernoulli(*n), "exact recurrence"),
        Target::Zeta2n(n) => {
            let v = zeta_even(*n, policy).map_err(core)?;
            Computed::ball(format!("zeta2n {n}"), &v, "Bernoulli closed form".into())
        }
        Target::Hurwitz { s, a } => {
            let v = hurwitz_zeta(*s, &rational(a)?, policy).map_err(core)?;
            Computed::ball(format!("hurwitz {s} {a}"), &v, "Euler-Maclaurin summation".into())
        }
        Target::Series { id, params } => series(id, params, policy)?,
    })
}
