//! Cross-checks between independent routes to the same quantity.

use num_bigint::BigInt;
use num_traits::Zero;

use eulerprod_core::contfrac::{
    cf_pi_eq5, cf_pi_eq6, cf_quarter_pi_thm21, cf_thm26, eval_gcf, sample_convergents, thm26_protocol, Parity,
};
use eulerprod_core::numbers::{bernoulli, euler, hurwitz_zeta, zeta_even};
use eulerprod_core::precision::{cosh, factorial, log, pi_times, Mag};
use eulerprod_core::series::{
    log_cosh, odd_partial_fraction_sum, odd_power_difference_sum, pi_squared_series,
    power_partial_fraction_sum, tanh_tan_difference_sum, LogCoshMethod,
};
use eulerprod_core::taylor::{iterated_operator_lhs, scaled_tan_derivative, theorem23_lhs, Jet};
use eulerprod_core::{const_pi, PrecisionPolicy, Rational, Real};

const P: u32 = 256;

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::with_bits(P).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Upper bound on `1/v` as a ball radius.
fn inv(v: i64) -> Mag {
    Real::ratio(1, v, 64).abs_upper()
}

#[test]
fn odd_euler_numbers_from_bernoulli() {
    for n in 1..=30i64 {
        let four_n: BigInt = BigInt::from(1) << (2 * n as usize);
        let factor = Rational::new(-(four_n - 1i32), BigInt::from(n));
        assert_eq!(euler(2 * n as usize - 1), factor * bernoulli(2 * n as usize), "n = {n}");
    }
    assert!((1..=20).all(|n| euler(2 * n).is_zero()));
}

#[test]
fn euler_numbers_from_generating_function() {
    // 2/(e^z + 1) by jet division; coefficients are exact factorial ratios
    let order = 20;
    let zero = Real::zero(P);
    let exp_plus_one: Vec<Real> = (0..=order)
        .map(|n| {
            let c = Real::from_rational(&Rational::new(1.into(), factorial(n as u64)), P);
            if n == 0 {
                c.mul_i64(2)
            } else {
                c
            }
        })
        .collect();
    let mut two = vec![Real::zero(P); order + 1];
    two[0] = Real::from_i64(2, P);
    let quotient = Jet::new(zero.clone(), two).unwrap().div(&Jet::new(zero, exp_plus_one).unwrap()).unwrap();
    for n in 0..=order {
        let expected = euler(n) / Rational::from_integer(factorial(n as u64));
        assert!(quotient.coeff(n).contains_rational(&expected), "n = {n}");
    }
}

#[test]
fn zeta_inside_direct_sum_with_integral_tail() {
    // sum_{k<=K} k^-2n plus the tail interval [0, K^(1-2n)/(2n-1)]
    let p = policy();
    let terms = 10_000i64;
    for n in 1..=10u32 {
        let s = 2 * n;
        let mut sum = Real::zero(P);
        for k in 1..=terms {
            sum = &sum + &Real::from_i64(k, P).pow(s).recip().unwrap();
        }
        let tail = Real::from_i64(terms, P).pow(s - 1).recip().unwrap().div_i64(s as i64 - 1);
        let half = tail.mul_2exp(-1);
        let oracle = (&sum + &half).add_error(half.abs_upper());
        assert!(oracle.contains(&zeta_even(n, &p).unwrap()), "n = {n}");
    }
}

#[test]
fn hurwitz_inside_direct_sum_with_crude_tail() {
    let p = policy();
    let terms = 4000u64;
    for s in [2u32, 3, 5, 9] {
        for (num, den) in [(1i64, 4i64), (1, 2), (3, 4), (1, 1)] {
            let a = q(num, den);
            let mut sum = Real::zero(P);
            for k in 0..terms {
                let base = Real::from_rational(&(&a + Rational::from_integer(BigInt::from(k))), P);
                sum = &sum + &base.pow(s).recip().unwrap();
            }
            // sum_{k>=M} (k+a)^-s <= (M-1)^(1-s)/(s-1) for a > 0
            let tail = Real::from_i64(terms as i64 - 1, P).pow(s - 1).recip().unwrap().div_i64(s as i64 - 1);
            let half = tail.mul_2exp(-1);
            let oracle = (&sum + &half).add_error(half.abs_upper());
            let h = hurwitz_zeta(s, &a, &p).unwrap();
            assert!(oracle.contains(&h), "s = {s}, a = {a}");
        }
    }
}

#[test]
fn partial_fractions_at_pi_vanish() {
    // tan(pi) = 0, so the full sum at x = pi encloses zero
    let p = policy();
    let v = odd_partial_fraction_sum(&const_pi(&p), &p).unwrap().value;
    assert!(v.contains_zero());
    assert!(v.rad() < Mag::pow2(-200));
}

#[test]
fn tan_derivatives_match_paired_differences() {
    let p = policy();
    for x in [Real::ratio(1, 5, P), pi_times(1, 4, P)] {
        for n in 1..=3 {
            let lhs = scaled_tan_derivative(n, &x, &p).unwrap();
            let rhs = odd_power_difference_sum(&x, n, &p).unwrap().value;
            assert!(lhs.overlaps(&rhs), "n = {n}");
        }
    }
}

#[test]
fn paired_difference_at_quarter_pi_is_scaled_derivative_side() {
    // n = 2: sum equals theorem23_lhs(2) * (2/pi)^3
    let p = policy();
    let pi = const_pi(&p);
    let v = odd_power_difference_sum(&pi_times(1, 4, P), 2, &p).unwrap().value;
    let expected = &theorem23_lhs(2, &p).unwrap() * &Real::from_i64(8, P).checked_div(&pi.pow(3)).unwrap();
    assert!(v.overlaps(&expected));
}

#[test]
fn iterated_operator_at_pi() {
    // n = 1, x = pi: sum_{k>=1} ((2k-1)(2k+3) pi^2)^-2, summed to 10^5 with a
    // tail below sum_{k>K} (2k-1)^-4 <= 1/(6 (2K-1)^3)
    let p = policy();
    let pi = const_pi(&p);
    let lhs = iterated_operator_lhs(1, &pi, &p).unwrap();
    let terms = 100_000i64;
    let mut s = Real::zero(128);
    for k in 1..=terms {
        let d = Real::from_i64((2 * k - 1) * (2 * k + 3), 128);
        s = &s + &d.sqr().recip().unwrap();
    }
    let s = s.add_error(inv(6 * (2 * terms - 1).pow(3)));
    let expected = s.checked_div(&pi.with_prec(128).pow(4)).unwrap();
    assert!(lhs.overlaps(&expected));
}

#[test]
fn power_sum_equals_iterated_operator_at_one() {
    let p = policy();
    let x = Real::one(P);
    let a = power_partial_fraction_sum(&x, 2, &p).unwrap().value;
    let b = iterated_operator_lhs(2, &x, &p).unwrap();
    assert!(a.overlaps(&b));
}

#[test]
fn pi_squared_n1_against_brute_force() {
    // 8 * 9 * cos^2(pi/3) = 18 times the sum; terms sit below 2/(9 (2k+1)^2)
    let terms = 100_000i64;
    let mut s = Real::zero(128);
    for k in 0..terms {
        let a2 = 9 * (2 * k + 1) * (2 * k + 1);
        let d = Real::from_i64(a2 - 4, 128).sqr();
        s = &s + &Real::from_i64(a2 + 4, 128).checked_div(&d).unwrap();
    }
    let s = s.add_error(inv(9 * 2 * terms)).mul_i64(18);
    let series = pi_squared_series(1, &policy()).unwrap().value;
    assert!(series.overlaps(&s));
    assert!(s.overlaps(&const_pi(&policy()).sqr()));
    // partial sums increase from 8 * 5/9
    let first = Real::ratio(40, 9, 64);
    assert!(first.upper() < series.lower());
}

#[test]
fn tanh_tan_difference_matches_rescaled_odd_square_sum() {
    // x = pi/6: sum = (9/pi^2) sum_k (1/(9(2k+1)^2 + 1) - 1/(9(2k+1)^2 - 1))
    let p = policy();
    let terms = 20_000i64;
    let mut s = Real::zero(160);
    for k in 0..terms {
        let a = 9 * (2 * k + 1) * (2 * k + 1);
        s = &s + &(&Real::ratio(1, a + 1, 160) - &Real::ratio(1, a - 1, 160));
    }
    // each pair is -2/(a^2 - 1), below 4/(81 (2k+1)^4) in size
    let s = s.add_error(inv(81 * 6 * (2 * terms - 1).pow(3) / 4));
    let pi = const_pi(&p).with_prec(160);
    let expected = s.mul_i64(9).checked_div(&pi.sqr()).unwrap();
    let v = tanh_tan_difference_sum(&pi_times(1, 6, P), &p).unwrap().value;
    assert!(v.overlaps(&expected));
}

#[test]
fn log_cosh_product_beyond_series_radius() {
    let p = policy();
    let x = Real::ratio(3, 2, P);
    let v = log_cosh(&x, LogCoshMethod::ProductLog, &p).unwrap().value;
    assert!(v.overlaps(&log(&cosh(&x)).unwrap()));
    let half = Real::ratio(1, 2, P);
    let euler_series = log_cosh(&half, LogCoshMethod::EulerSeries, &p).unwrap();
    assert!(euler_series.value.overlaps(&log(&cosh(&half)).unwrap()));
}

#[test]
fn pi_fractions_approach_pi() {
    let p = policy();
    let pi = const_pi(&p);
    let depths: Vec<usize> = (5..=60).collect();
    let errs: Vec<Mag> = sample_convergents(&cf_pi_eq5(), &depths, P)
        .iter()
        .map(|v| (v.as_ref().unwrap() - &pi).abs_upper())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]));

    let s = sample_convergents(&cf_pi_eq6(), &[20, 60, 200], P);
    let e: Vec<f64> = s.iter().map(|v| (v.as_ref().unwrap() - &pi).abs_upper().to_f64()).collect();
    assert!(e[2] < e[1] && e[1] < e[0]);
    // measured: 2.7e-5 at 20, 1.1e-6 at 60, 3.1e-8 at 200
    assert!(e[1] < 2e-6 && e[2] < 1e-7);
}

#[test]
fn quarter_pi_fraction_error_shrinks_like_one_over_depth() {
    let quarter = const_pi(&policy()).mul_2exp(-2);
    let s = sample_convergents(&cf_quarter_pi_thm21(), &[100, 1000], P);
    let e: Vec<f64> = s.iter().map(|v| (v.as_ref().unwrap() - &quarter).abs_upper().to_f64()).collect();
    assert!(e[1] < e[0]);
    assert!((e[0] * 100.0 - 0.25).abs() < 0.01 && (e[1] * 1000.0 - 0.25).abs() < 0.01);
}

#[test]
fn eval_returns_last_convergent_with_gap_radius() {
    let p = policy();
    let r = eval_gcf(&cf_quarter_pi_thm21(), 2, &p).unwrap();
    assert_eq!(r.sequence.last.index, 2);
    assert!(r.value.contains_rational(&q(76, 105)));
    assert!(r.value.contains_rational(&q(13, 15)));
}

#[test]
fn thm26_printed_reading_at_moderate_depth() {
    let p = policy();
    let report = thm26_protocol(1, 1001, &p).unwrap();
    assert_eq!(report.parity, Parity::Odd);
    assert_eq!(report.singular_count, 0);
    assert!(report.printed_reading_verified());
    assert_eq!(report.matching().count(), 1);
    assert!((report.oracle.to_f64() + 39.4283397873866).abs() < 1e-9);
    // the leading term shift alone changes the value by one
    assert!(cf_thm26(2).leading() == &q(26, 1));
}

#[test]
fn hurwitz_difference_at_n3() {
    let p = policy();
    let lhs = theorem23_lhs(3, &p).unwrap();
    let d = &hurwitz_zeta(5, &q(1, 4), &p).unwrap() - &hurwitz_zeta(5, &q(3, 4), &p).unwrap();
    assert!(lhs.overlaps(&d.mul_2exp(-10)));
}
