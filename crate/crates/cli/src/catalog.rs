//! The frozen list of identity instances the suite checks.

use eulerprod_core::contfrac::{cf_quarter_pi_thm21, eval_gcf, thm26_protocol, Reading, THM26_AGREEMENT};
use eulerprod_core::numbers::{euler, euler_from_bernoulli, hurwitz_zeta, zeta_even};
use eulerprod_core::precision::{pi_times, Mag};
use eulerprod_core::series::{
    cos_product, half_pi_sqrt_series, leibniz_tail_sum, log_cosh, odd_partial_fraction_sum,
    pi_squared_series, power_partial_fraction_sum, tanh_series, tanh_tan_difference_sum, telescoping_third,
    LogCoshMethod, ProductVariant,
};
use eulerprod_core::taylor::{iterated_operator_lhs, theorem23_lhs};
use eulerprod_core::{const_pi, eval_elementary, Elementary, Error, PrecisionPolicy, Rational, Real};

/// Both sides of one identity instance.
pub struct Sides {
    pub lhs: Real,
    pub rhs: Real,
    pub detail: Option<String>,
}

impl Sides {
    fn new(lhs: Real, rhs: Real) -> Self {
        Sides { lhs, rhs, detail: None }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

type Eval = Box<dyn Fn(&PrecisionPolicy, usize) -> Result<Sides, Error> + Send + Sync>;

pub struct Identity {
    pub id: String,
    /// Accuracy is capped by the continued-fraction depth, not by the
    /// working precision, so raising the precision cannot settle it.
    pub depth_limited: bool,
    eval: Eval,
}

impl Identity {
    fn new(
        id: impl Into<String>,
        eval: impl Fn(&PrecisionPolicy, usize) -> Result<Sides, Error> + Send + Sync + 'static,
    ) -> Self {
        Identity { id: id.into(), depth_limited: false, eval: Box::new(eval) }
    }

    fn depth_limited(mut self) -> Self {
        self.depth_limited = true;
        self
    }

    pub fn eval(&self, policy: &PrecisionPolicy, depth: usize) -> Result<Sides, Error> {
        (self.eval)(policy, depth)
    }
}

/// A sample point: `p/q` or `p pi/q`.
#[derive(Clone, Copy, Debug)]
pub enum Point {
    Ratio(i64, i64),
    PiRatio(i64, i64),
}

impl Point {
    pub fn label(self) -> String {
        match self {
            Point::Ratio(p, 1) => p.to_string(),
            Point::Ratio(p, q) => format!("{p}/{q}"),
            Point::PiRatio(1, 1) => "pi".into(),
            Point::PiRatio(1, q) => format!("pi/{q}"),
            Point::PiRatio(p, 1) => format!("{p}pi"),
            Point::PiRatio(p, q) => format!("{p}pi/{q}"),
        }
    }

    pub fn real(self, bits: u32) -> Real {
        match self {
            Point::Ratio(p, q) => Real::ratio(p, q, bits),
            Point::PiRatio(p, q) => pi_times(p, q, bits),
        }
    }

    /// Parses `3`, `-1/3`, `pi`, `pi/4`, `3pi/4`.
    pub fn parse(s: &str) -> Option<Point> {
        let s = s.trim();
        let (head, den) = match s.split_once('/') {
            Some((h, d)) => (h, d.parse::<i64>().ok().filter(|&d| d > 0)?),
            None => (s, 1),
        };
        if let Some(coef) = head.strip_suffix("pi") {
            let num = match coef {
                "" => 1,
                "-" => -1,
                c => c.parse().ok()?,
            };
            return Some(Point::PiRatio(num, den));
        }
        if den == 1 && head.contains(['.', 'e', 'E']) {
            return None;
        }
        Some(Point::Ratio(head.parse().ok()?, den))
    }
}

fn elementary(f: Elementary, x: &Real, policy: &PrecisionPolicy) -> Result<Real, Error> {
    eval_elementary(f, x, policy)
}

fn n_label(n: i64) -> String {
    if n < 0 {
        format!("nm{}", -n)
    } else {
        format!("n{n}")
    }
}

fn exact(q: &Rational, bits: u32) -> Real {
    Real::from_rational(q, bits)
}

fn mag_of(v: f64) -> Mag {
    Rational::from_float(v).map_or(Mag::zero(), |q| Real::from_rational(&q, 64).abs_upper())
}

fn sci(m: Mag) -> String {
    m.to_sci_string(2)
}

/// Every identity instance, sorted by id.
pub fn catalog() -> Vec<Identity> {
    let mut all = Vec::new();

    for n in 1..=10u32 {
        all.push(Identity::new(format!("eq3-n{n}"), move |p, _| {
            let one = Rational::from_integer(1.into());
            Ok(Sides::new(zeta_even(n, p)?, hurwitz_zeta(2 * n, &one, p)?))
        }));
    }

    for n in (1..=19usize).step_by(2) {
        all.push(Identity::new(format!("eq11-n{n}"), move |p, _| {
            let bits = p.working_bits();
            Ok(Sides::new(exact(&euler(n), bits), exact(&euler_from_bernoulli(n), bits)))
        }));
    }

    let products = [
        ("eq16", ProductVariant::Cos, Elementary::Cos),
        ("eq39", ProductVariant::Cosh, Elementary::Cosh),
        ("eq40", ProductVariant::CoshCos, Elementary::Cos),
    ];
    for (name, variant, closed) in products {
        let x = Point::Ratio(1, 1);
        all.push(Identity::new(format!("{name}-x{}", x.label()), move |p, _| {
            let x = x.real(p.working_bits());
            let prod = cos_product(&x, variant, p)?;
            let mut rhs = elementary(closed, &x, p)?;
            if variant == ProductVariant::CoshCos {
                rhs = &rhs * &elementary(Elementary::Cosh, &x, p)?;
            }
            Ok(Sides::new(prod.value, rhs).with_detail(format!("{} factors", prod.terms_used)))
        }));
    }

    for x in [Point::Ratio(1, 10), Point::Ratio(1, 3), Point::PiRatio(1, 4), Point::Ratio(1, 1)] {
        all.push(Identity::new(format!("eq18-x{}", x.label()), move |p, _| {
            let x = x.real(p.working_bits());
            let lhs = elementary(Elementary::Tan, &x, p)?.checked_div(&x.mul_i64(8))?;
            let sum = odd_partial_fraction_sum(&x, p)?;
            Ok(Sides::new(lhs, sum.value).with_detail(format!("{} terms", sum.terms_used)))
        }));
    }

    all.push(Identity::new("eq20", |p, _| {
        let bits = p.working_bits();
        let third = Rational::new(1.into(), 3.into());
        Ok(Sides::new(exact(&telescoping_third(), bits), exact(&third, bits)))
    }));

    all.push(Identity::new("eq23", |p, _| {
        let rhs = (&const_pi(p).mul_i64(3) - &Real::from_i64(8, p.working_bits())).div_i64(12);
        Ok(Sides::new(leibniz_tail_sum(p)?, rhs))
    }));

    for x in [Point::PiRatio(1, 10), Point::PiRatio(1, 6), Point::Ratio(1, 1)] {
        all.push(Identity::new(format!("eq42-x{}", x.label()), move |p, _| {
            let x = x.real(p.working_bits());
            let diff = &elementary(Elementary::Tanh, &x, p)? - &elementary(Elementary::Tan, &x, p)?;
            let rhs = diff.checked_div(&x.mul_i64(8))?;
            let sum = tanh_tan_difference_sum(&x, p)?;
            Ok(Sides::new(sum.value, rhs).with_detail(format!("{} terms", sum.terms_used)))
        }));
    }

    all.push(
        Identity::new("thm2.1", |p, depth| {
            let cf = eval_gcf(&cf_quarter_pi_thm21(), depth, p)?;
            let quarter = const_pi(p).mul_2exp(-2);
            let err = (&cf.value - &quarter).abs_upper();
            Ok(Sides::new(cf.value, quarter).with_detail(format!(
                "depth {depth}; radius is the last-step difference, not a bound; |convergent - pi/4| <= {}",
                sci(err)
            )))
        })
        .depth_limited(),
    );

    for n in 1..=3u32 {
        for x in [Point::Ratio(1, 3), Point::PiRatio(1, 4), Point::Ratio(1, 1)] {
            all.push(Identity::new(format!("thm2.2-n{n}-x{}", x.label()), move |p, _| {
                let x = x.real(p.working_bits());
                let sum = power_partial_fraction_sum(&x, n, p)?;
                Ok(Sides::new(iterated_operator_lhs(n, &x, p)?, sum.value))
            }));
        }
    }

    for n in 1..=8u32 {
        all.push(Identity::new(format!("thm2.3-n{n}"), move |p, _| {
            let lhs = theorem23_lhs(n, p)?;
            if n == 1 {
                return Ok(Sides::new(lhs, const_pi(p).mul_2exp(-2)));
            }
            let s = 2 * n - 1;
            let quarter = Rational::new(1.into(), 4.into());
            let three_quarters = Rational::new(3.into(), 4.into());
            let d = &hurwitz_zeta(s, &quarter, p)? - &hurwitz_zeta(s, &three_quarters, p)?;
            Ok(Sides::new(lhs, d.mul_2exp(-2 * s as i64)))
        }));
    }

    for n in [-3i64, -1, 0, 1, 2, 5] {
        all.push(Identity::new(format!("thm2.4-{}", n_label(n)), move |p, _| {
            let sum = pi_squared_series(n, p)?;
            Ok(Sides::new(sum.value, const_pi(p).sqr()).with_detail(format!("{} terms", sum.terms_used)))
        }));
    }

    all.push(Identity::new("cor2.5", |p, _| {
        let sum = half_pi_sqrt_series(p)?;
        Ok(Sides::new(sum.value, const_pi(p).mul_2exp(-1)))
    }));

    for n in [1u32, 2] {
        all.push(
            Identity::new(format!("thm2.6-n{n}"), move |p, depth| {
                let report = thm26_protocol(n, depth, p)?;
                let printed = &report.outcomes[0];
                debug_assert_eq!(printed.reading, Reading::ALL[0]);
                // the protocol resolves readings to THM26_AGREEMENT, so that is
                // the honest width of the estimate
                let width = std::cmp::max(mag_of(report.stability), mag_of(THM26_AGREEMENT));
                let lhs = printed.cf_estimate.add_error(width);
                let matched: Vec<&str> = report.matching().map(|o| o.reading.label()).collect();
                let resolved = if matched.is_empty() { "none".to_string() } else { matched.join("; ") };
                let detail = format!(
                    "resolved reading: {resolved}; {:?} convergents to depth {depth}, spread {:.1e}, \
                     printed-form gap {:.1e}, {} singular",
                    report.parity, report.stability, printed.gap, report.singular_count
                );
                Ok(Sides::new(lhs, printed.target.clone()).with_detail(detail))
            })
            .depth_limited(),
        );
    }

    for x in [Point::Ratio(1, 10), Point::Ratio(1, 2), Point::Ratio(1, 1)] {
        for (name, method) in [("euler", LogCoshMethod::EulerSeries), ("zeta", LogCoshMethod::ZetaSeries)] {
            all.push(Identity::new(format!("thm2.7-logcosh-x{}-{name}", x.label()), move |p, _| {
                let x = x.real(p.working_bits());
                let product = log_cosh(&x, LogCoshMethod::ProductLog, p)?;
                let series = log_cosh(&x, method, p)?;
                Ok(Sides::new(product.value, series.value))
            }));
        }
    }
    for x in [Point::Ratio(1, 10), Point::Ratio(1, 1)] {
        all.push(Identity::new(format!("thm2.7-tanh-x{}", x.label()), move |p, _| {
            let x = x.real(p.working_bits());
            Ok(Sides::new(tanh_series(&x, p)?, elementary(Elementary::Tanh, &x, p)?))
        }));
    }

    all.sort_by(|a, b| natord::compare(&a.id, &b.id));
    all
}
