use std::process::Command;

use eulerprod_cli::catalog::Point;
use eulerprod_cli::report::matches;
use eulerprod_cli::{compute, identity_ids, render_csv, render_json, run_suite, Status, Target, UsageError};
use eulerprod_core::precision::pow10_tolerance;
use eulerprod_core::{PrecisionPolicy, Real};

// first 50 decimals of pi as published
const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

fn policy() -> PrecisionPolicy {
    PrecisionPolicy::with_bits(256).unwrap()
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eulerprod"))
}

#[test]
fn telescoping_identity_is_verified_with_zero_gap() {
    let r = run_suite(Some("eq20"), &policy(), 10_000).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!(r[0].status, Status::Verified);
    assert_eq!(r[0].gap, "0");
}

#[test]
fn pi_squared_series_verified_at_default_precision() {
    let r = run_suite(Some("thm2.4-n0"), &policy(), 10_000).unwrap();
    assert_eq!(r.len(), 1);
    assert_eq!((r[0].status, r[0].precision_bits), (Status::Verified, 256));
}

#[test]
fn tanh_tan_fraction_records_resolved_reading() {
    let r = run_suite(Some("thm2.6-n1"), &policy(), 2000).unwrap();
    assert!(matches!(r[0].status, Status::Verified | Status::Inconclusive));
    assert!(r[0].detail.as_deref().unwrap().contains("resolved reading: leading N^2+1, signed"));
}

#[test]
fn inconclusive_results_escalate_precision() {
    // 1e-100 is about 2^-332, out of reach at 128 bits
    let p = PrecisionPolicy::new(128, pow10_tolerance(-100)).unwrap();
    let r = run_suite(Some("thm2.4-n1"), &p, 10_000).unwrap();
    assert_eq!(r[0].status, Status::Verified);
    assert_eq!(r[0].precision_bits, 512);
}

#[test]
fn status_rules() {
    let tol = pow10_tolerance(-30);
    let a = Real::ratio(1, 3, 256);
    assert_eq!(Status::classify(&a, &a, &tol), Status::Verified);
    let wide = a.add_error(Real::ratio(1, 1000, 64).abs_upper());
    assert_eq!(Status::classify(&wide, &a, &tol), Status::Inconclusive);
    assert_eq!(Status::classify(&a, &Real::ratio(1, 2, 256), &tol), Status::Mismatch);
}

#[test]
fn exact_numbers_print_as_fractions() {
    let e = compute(&Target::Euler(19), &policy(), 0).unwrap();
    assert!(e.to_text().starts_with("221930581/4\n"));
    let b = compute(&Target::Bernoulli(20), &policy(), 0).unwrap();
    assert!(b.to_text().starts_with("-174611/330\n"));
}

#[test]
fn pi_at_128_bits_matches_published_digits() {
    let p = PrecisionPolicy::with_bits(128).unwrap();
    let text = compute(&Target::Pi, &p, 0).unwrap().to_text();
    let digits = text.split_whitespace().next().unwrap();
    let agree = digits.chars().zip(PI_50.chars()).take_while(|(a, b)| a == b).count();
    // "3." plus at least 35 places
    assert!(agree >= 37, "{digits}");
}

#[test]
fn series_targets_report_provenance() {
    let t = Target::Series { id: "odd-partial-fraction".into(), params: vec!["pi/4".into()] };
    let c = compute(&t, &policy(), 0).unwrap();
    assert!(c.provenance.starts_with("zeta-accelerated"));
    // tan(pi/4)/(8 pi/4) = 1/(2 pi)
    assert!(c.to_text().starts_with("0.159154943091895335768883763372514362034459645740456448747667"));
    let bad = Target::Series { id: "tanh-tan".into(), params: vec![] };
    assert!(matches!(compute(&bad, &policy(), 0), Err(UsageError::InvalidArgument(_))));
    let unknown = Target::Series { id: "nope".into(), params: vec![] };
    assert!(compute(&unknown, &policy(), 0).is_err());
}

#[test]
fn patterns_select_by_prefix_or_glob() {
    let ids = identity_ids();
    let pick = |p: &str| ids.iter().filter(|id| matches(p, id).unwrap()).count();
    assert_eq!(pick("eq18"), 4);
    assert_eq!(pick("eq18-x1"), 1);
    assert_eq!(pick("eq1"), 0);
    assert_eq!(pick("thm2.2-*-x1"), 3);
    assert_eq!(pick("thm2.4"), 6);
    assert!(matches!(run_suite(Some("eq99"), &policy(), 10), Err(UsageError::UnknownIdentity(_))));
}

#[test]
fn ids_are_unique_and_naturally_ordered() {
    let ids = identity_ids();
    let mut sorted = ids.clone();
    sorted.dedup();
    assert_eq!(sorted.len(), ids.len());
    let pos = |id: &str| ids.iter().position(|x| x == id).unwrap();
    assert!(pos("eq3-n2") < pos("eq3-n10"));
    assert!(pos("eq3-n10") < pos("eq18-x1"));
    assert!(pos("thm2.2-n3-x1") < pos("thm2.3-n1"));
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let strip = |s: String| -> String {
        s.lines().filter(|l| !l.contains("\"elapsed_ms\"")).collect::<Vec<_>>().join("\n")
    };
    let run = || {
        let r = run_suite(Some("eq18"), &policy(), 10_000).unwrap();
        render_json(&r, 256, "1e-30", 10_000)
    };
    let (a, b) = (run(), run());
    assert_eq!(strip(a.clone()), strip(b));
    let doc: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(doc["policy"]["precision_bits"], 256);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 4);
}

#[test]
fn csv_has_fixed_columns() {
    let r = run_suite(Some("eq23"), &policy(), 10_000).unwrap();
    let csv = render_csv(&r);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("identity_id,lhs,rhs,gap,status,precision_bits,elapsed_ms"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!((row[0], row[4], row[5]), ("eq23", "verified", "256"));
}

#[test]
fn point_labels_round_trip() {
    for p in ["1", "1/3", "pi", "pi/4", "3pi/4", "-1/10"] {
        assert_eq!(Point::parse(p).unwrap().label(), p);
    }
    assert!(Point::parse("pi/0").is_none());
    assert!(Point::parse("x").is_none());
}

#[test]
fn binary_exit_codes() {
    let ok = bin().args(["--identity", "eq20", "--format", "csv"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with("identity_id,"));

    let unknown = bin().args(["--identity", "eq99"]).output().unwrap();
    assert_eq!(unknown.status.code(), Some(2));
    let bad_tol = bin().args(["--tolerance", "abc", "--identity", "eq20"]).output().unwrap();
    assert_eq!(bad_tol.status.code(), Some(2));
    let bad_flag = bin().args(["--precision-bits", "many"]).output().unwrap();
    assert_eq!(bad_flag.status.code(), Some(2));
    let bad_target = bin().args(["compute", "hurwitz", "3", "1/0"]).output().unwrap();
    assert_eq!(bad_target.status.code(), Some(2));
}

#[test]
fn binary_writes_output_file() {
    let path = std::env::temp_dir().join(format!("eulerprod-{}.json", std::process::id()));
    let st = bin().args(["--identity", "cor2.5", "--output"]).arg(&path).status().unwrap();
    assert_eq!(st.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["reports"][0]["status"], "verified");
    std::fs::remove_file(path).unwrap();
}

#[test]
fn binary_computes_euler_number() {
    let out = bin().args(["compute", "euler-number", "19"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().next(), Some("221930581/4"));
}
