use std::process::{Command, Output};

use serde_json::Value;

fn bc1(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bc1")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

#[test]
fn poly_prints_e_plus() {
    let v = json(&bc1(&["poly", "--family", "E", "--n", "1", "--k", "2,1"]));
    assert_eq!(v["result"]["text"], "z + 2/5");
    let terms = v["result"]["poly"]["terms"].as_array().unwrap();
    assert!(terms.iter().any(|t| t["exp"] == 0 && t["coef"] == "2/5"));
}

#[test]
fn verify_suite_exit_codes() {
    let out = bc1(&["verify", "--suite", "symmetry", "--k", "2,1"]);
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_is_deterministic() {
    let a = bc1(&["verify", "--suite", "hc", "--k", "1,1", "--seed", "7"]);
    let b = bc1(&["verify", "--suite", "hc", "--k", "1,1", "--seed", "7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn table_evals_rows_match() {
    let v = json(&bc1(&["table", "--what", "evals", "--range", "-3..3", "--k", "2,1"]));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 7);
    for r in rows {
        assert_eq!(r["lhs"], r["rhs"]);
    }
}

#[test]
fn table_csv_header() {
    let out = bc1(&["table", "--what", "norms", "--range", "0..1", "--k", "2,1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("lambda,lhs,rhs,constant"));
    assert_eq!(lines.nth(1), Some("1,21/20,42/5,1/8"));
}

#[test]
fn decompose_round_trip() {
    let v = json(&bc1(&["decompose", "--realization", "nonsym", "--ell", "0,1", "--k", "2,1", "--p", "1,0,2"]));
    assert_eq!(v["p"]["text"], "2*xi^2 + 1");
    assert_eq!(v["residual_is_zero"], true);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bc1(&["verify", "--suite", "bogus"]).status.code(), Some(2));
    assert_eq!(bc1(&["poly", "--family", "E", "--n", "1", "--k", "nope"]).status.code(), Some(2));
    assert_eq!(bc1(&["frobnicate"]).status.code(), Some(2));
}
