//! The `gegnorm` binary: documented examples, formats and exit codes.

use std::process::{Command, Output};

use gegenbauer_norms::cli::{CSV_HEADER, CURVE_HEADER};
use gegenbauer_norms::numerics::{Precision, Real};
use serde_json::Value;

fn gegnorm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gegnorm"))
        .env_remove("GEGNORM_DIGITS")
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(stdout(o).trim()).unwrap()
}

fn value(v: &Value) -> Real {
    Real::parse(v["value"].as_str().unwrap(), Precision::digits(40)).unwrap()
}

fn close(a: &Real, b: &Real, tol: f64) -> bool {
    ((a - b) / b).abs() < tol
}

#[test]
fn compute_legendre_exact() {
    let o = gegnorm(&["compute", "--lambda", "1/2", "--alpha", "0", "--beta", "0", "--n", "3", "--method", "exact5F4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["method"], "exact5F4");
    assert_eq!(v["n"], 3);
    assert_eq!(v["params"]["lambda"], "1/2");
    let two_sevenths = Real::from_i64(2, Precision::digits(40)) / 7i64;
    assert!(close(&value(&v), &two_sevenths, 1e-38));
    assert!(v["diagnostics"]["digitsLost"].is_number());
    assert_eq!(v["diagnostics"]["classification"], "generic");
}

#[test]
fn compute_chebyshev_by_recurrence() {
    let o = gegnorm(&["compute", "--lambda", "1", "--mu", "1", "--n", "17", "--method", "recurrence"]);
    assert_eq!(o.status.code(), Some(0));
    let half_pi = Real::pi(Precision::digits(40)) / 2i64;
    assert!(close(&value(&json(&o)), &half_pi, 1e-38));
}

#[test]
fn compute_closed_form() {
    let o = gegnorm(&["compute", "--lambda", "1", "--mu", "0", "--n", "9", "--method", "closedForm"]);
    assert_eq!(o.status.code(), Some(0));
    let ten_pi = Real::pi(Precision::digits(40)) * 10i64;
    assert!(close(&value(&json(&o)), &ten_pi, 1e-38));
}

#[test]
fn tagged_input_is_classified() {
    let o = gegnorm(&["compute", "--lambda", "5/2", "--mu", "1/2", "--n", "4"]);
    let v = json(&o);
    assert_eq!(v["diagnostics"]["classification"], "lambdaMinusMuIsPosInt(2)");
    assert_eq!(v["method"], "closedForm");
    let o = gegnorm(&["compute", "--lambda", "1/1", "--mu", "1/2", "--n", "64", "--method", "leadingTerm"]);
    let v = json(&o);
    assert_eq!(v["diagnostics"]["classification"], "muEqLambdaMinusHalf");
    assert!(v["diagnostics"]["etaExponents"].is_array());
}

#[test]
fn digits_flag_and_environment() {
    let o = gegnorm(&["compute", "--lambda", "1", "--mu", "1", "--n", "2", "--digits", "20"]);
    let s = json(&o)["value"].as_str().unwrap().to_string();
    assert_eq!(s.trim_start_matches('-').chars().filter(|c| c.is_ascii_digit()).count(), 20);
    let o = Command::new(env!("CARGO_BIN_EXE_gegnorm"))
        .env("GEGNORM_DIGITS", "25")
        .args(["compute", "--lambda", "1", "--mu", "1", "--n", "2"])
        .output()
        .unwrap();
    let s = json(&o)["value"].as_str().unwrap().to_string();
    assert_eq!(s.chars().filter(|c| c.is_ascii_digit()).count(), 25);
}

#[test]
fn exit_codes() {
    let o = gegnorm(&["compute", "--lambda", "0.5", "--alpha", "-1.5", "--beta", "0", "--n", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(String::from_utf8_lossy(&o.stderr).lines().count(), 1);
    assert_eq!(gegnorm(&["compute", "--lambda", "1", "--n", "3"]).status.code(), Some(2));
    assert_eq!(gegnorm(&["compute", "--lambda", "1", "--mu", "1", "--n", "3", "--method", "bogus"]).status.code(), Some(2));
    assert_eq!(gegnorm(&["frobnicate"]).status.code(), Some(2));
    let capped = gegnorm(&[
        "compute", "--lambda", "0.3", "--alpha", "0.2", "--beta", "0.9", "--n", "200", "--method", "exact5F4", "--max-digits", "40",
    ]);
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(gegnorm(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_cardinality_and_header() {
    let args = [
        "table", "--lambda-list", "0.7,1.3", "--alpha-list", "0.3,1.2", "--beta-list", "-0.5,0", "--n-max", "5", "--methods",
        "exact5F4,quadrature",
    ];
    let o = gegnorm(&args);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CSV_HEADER.join(","));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 80);
    // lexicographic in (lambda, alpha, beta, n, method)
    assert!(rows[0].starts_with("0.7,0.3,-0.5,,1,exact5F4,"));
    assert!(rows[1].starts_with("0.7,0.3,-0.5,,1,quadrature,"));
    assert!(rows[79].starts_with("1.3,1.2,0,,5,quadrature,"));
    assert_eq!(stdout(&gegnorm(&args)), text, "output must be deterministic");
}

#[test]
fn table_method_pairs_agree() {
    let o = gegnorm(&[
        "table", "--lambda-list", "0.3,1.5", "--alpha-list", "-0.5,1.2", "--beta-list", "0,0.3", "--n-min", "0", "--n-max", "12",
        "--methods", "exact5F4,quadrature,genfun", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 8 * 13 * 3);
    for cell in rows.chunks(3) {
        let base = value(&cell[0]);
        for other in &cell[1..] {
            assert!(close(&value(other), &base, 1e-20), "{other}");
        }
    }
}

#[test]
fn table_keep_going_reports_errors() {
    let args = ["table", "--lambda-list", "1,0.7", "--mu-list", "0.4", "--n-max", "2", "--methods", "exact4F3,closedForm"];
    let stopped = gegnorm(&args);
    assert_eq!(stopped.status.code(), Some(2));
    let mut with_flag = args.to_vec();
    with_flag.push("--keep-going");
    let o = gegnorm(&with_flag);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().filter(|r| r.contains("closedForm")).all(|r| r.contains("domain error")));
}

#[test]
fn error_curve_legendre_order_one() {
    let o = gegnorm(&["error-curve", "--lambda", "1/2", "--alpha", "0", "--beta", "0", "--terms", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), CURVE_HEADER.join(","));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    let ns: Vec<u64> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(ns, (6..=14).map(|e| 1u64 << e).collect::<Vec<_>>());
    for r in &rows[..rows.len() - 1] {
        let order: f64 = r[4].parse().unwrap();
        assert!((order - 1.0).abs() <= 0.25, "{r:?}");
        assert!(!r[3].starts_with('-'));
    }
    assert_eq!(rows.last().unwrap()[4], "");
}

#[test]
fn error_curve_log_case_decays_like_log_n_over_n() {
    let o = gegnorm(&["error-curve", "--lambda", "1", "--mu", "1/2", "--n-list", "256,1024,4096", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    for line in stdout(&o).lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        let n = v["n"].as_u64().unwrap() as f64;
        let prec = Precision::digits(40);
        let exact = Real::parse(v["exact"].as_str().unwrap(), prec).unwrap();
        let approx = Real::parse(v["approx"].as_str().unwrap(), prec).unwrap();
        let residual = (exact - approx).abs().to_f64();
        assert!(residual <= 10.0 * n.ln() / n, "n = {n}: residual {residual}");
    }
}

#[test]
fn error_curve_rejects_unsorted_degrees() {
    let o = gegnorm(&["error-curve", "--lambda", "1", "--mu", "0.3", "--n-list", "64,32"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn crossover_command() {
    let o = gegnorm(&["crossover", "--lambda", "1/2", "--alpha", "0", "--beta", "0", "--tol", "1e-2"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    // the M = 0 relative error of the Legendre series is 1/(2n+1)
    assert_eq!(v["n"], 50);
    let o = gegnorm(&["crossover", "--lambda", "0.7", "--mu", "0.1", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn verify_identities_suite() {
    let o = gegnorm(&["verify", "--suite", "identities"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in ["Pfaff-Saalschutz", "two formulas", "reflection symmetry"] {
        assert!(text.lines().any(|l| l.starts_with("PASS") && l.contains(name)), "{name}");
    }
    assert!(text.lines().last().unwrap().ends_with("0 failed"));
}
