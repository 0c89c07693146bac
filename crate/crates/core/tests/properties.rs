use num_bigint::BigInt;
use proptest::prelude::*;

use eulerprod_core::precision::{cos, exp, log, tan, tanh, Mag};
use eulerprod_core::series::{odd_partial_fraction_sum, tanh_tan_difference_sum};
use eulerprod_core::taylor::{jet_lift_identity, Jet};
use eulerprod_core::{PrecisionPolicy, Rational, Real};

fn rational() -> impl Strategy<Value = Rational> {
    (-10_000i64..10_000, 1i64..5_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-1_400i64..1_400, 1i64..1_000).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn rational_sums_match_cross_multiplication(a in rational(), b in rational()) {
        let sum = &a + &b;
        let cross = Rational::new(
            a.numer() * b.denom() + b.numer() * a.denom(),
            a.denom() * b.denom(),
        );
        prop_assert_eq!(&sum, &cross);
        prop_assert_eq!(sum.numer() * cross.denom(), cross.numer() * sum.denom());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ball_arithmetic_contains_exact_results(a in rational(), b in rational()) {
        let (x, y) = (Real::from_rational(&a, 80), Real::from_rational(&b, 80));
        prop_assert!((&x + &y).contains_rational(&(&a + &b)));
        prop_assert!((&x - &y).contains_rational(&(&a - &b)));
        prop_assert!((&x * &y).contains_rational(&(&a * &b)));
        if b != Rational::from_integer(BigInt::from(0)) {
            prop_assert!(x.checked_div(&y).unwrap().contains_rational(&(&a / &b)));
        }
    }

    #[test]
    fn higher_precision_lies_inside(a in small_rational()) {
        let lo = 64;
        let hi = 640;
        let x_lo = Real::from_rational(&a, lo);
        let x_hi = Real::from_rational(&a, hi);
        prop_assert!(exp(&x_lo).contains(&exp(&x_hi)));
        prop_assert!(cos(&x_lo).contains(&cos(&x_hi)));
        prop_assert!(tanh(&x_lo).contains(&tanh(&x_hi)));
        if let (Ok(t_lo), Ok(t_hi)) = (tan(&x_lo), tan(&x_hi)) {
            prop_assert!(t_lo.contains(&t_hi));
        }
        if x_lo.is_positive() {
            prop_assert!(log(&x_lo).unwrap().contains(&log(&x_hi).unwrap()));
        }
    }

    #[test]
    fn radii_shrink_with_precision(a in small_rational()) {
        let p = 96;
        let x = Real::from_rational(&a, p);
        let x2 = Real::from_rational(&a, 2 * p);
        prop_assert!(exp(&x2).rad() <= exp(&x).rad());
        prop_assert!(cos(&x2).rad() <= cos(&x).rad());
        prop_assert!(tanh(&x2).rad() <= tanh(&x).rad());
        prop_assert!((&x2 * &x2).rad() <= (&x * &x).rad());
    }

    #[test]
    fn jet_quotient_times_divisor_returns_numerator(
        f in prop::collection::vec(-50i64..50, 5),
        g in prop::collection::vec(-50i64..50, 5),
    ) {
        prop_assume!(g[0] != 0);
        let lift = |v: &[i64]| {
            Jet::new(Real::zero(96), v.iter().map(|&c| Real::from_i64(c, 96)).collect()).unwrap()
        };
        let (f, g) = (lift(&f), lift(&g));
        let back = f.div(&g).unwrap().mul(&g).unwrap();
        for (a, b) in back.coeffs().iter().zip(f.coeffs()) {
            prop_assert!(a.overlaps(b));
        }
    }

    #[test]
    fn identity_jet_squares_to_quadratic(n in -100i64..100) {
        let a = Real::from_i64(n, 64);
        let sq = jet_lift_identity(&a, 3).square();
        prop_assert!(sq.coeff(0).overlaps(&Real::from_i64(n * n, 64)));
        prop_assert!(sq.coeff(1).overlaps(&Real::from_i64(2 * n, 64)));
        prop_assert!(sq.coeff(2).overlaps(&Real::one(64)));
        prop_assert!(sq.coeff(3).contains_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn series_radii_shrink_as_policy_tightens(num in 1i64..140, den in 1i64..100) {
        let x = Real::ratio(num, den, 1024);
        let coarse = PrecisionPolicy::with_bits(128).unwrap();
        let fine = coarse.escalated().unwrap();
        let a = odd_partial_fraction_sum(&x, &coarse);
        let b = odd_partial_fraction_sum(&x, &fine);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert!(b.value.rad() <= a.value.rad());
            prop_assert!(a.value.overlaps(&b.value));
        }
        let a = tanh_tan_difference_sum(&x, &coarse);
        let b = tanh_tan_difference_sum(&x, &fine);
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert!(b.value.rad() <= a.value.rad());
            prop_assert!(a.value.rad() > Mag::zero());
        }
    }
}
