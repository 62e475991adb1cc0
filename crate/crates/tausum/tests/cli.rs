//! End-to-end checks of the binary: argument surface, JSON record shapes,
//! exit codes, and stream discipline (results on stdout, diagnostics on
//! stderr).

use std::process::{Command, Output};

fn tausum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tausum")).args(args).output().expect("spawn tausum")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_line(out: &Output) -> serde_json::Value {
    let text = stdout_of(out);
    let mut lines = text.lines();
    let first = lines.next().expect("at least one stdout line");
    assert_eq!(lines.next(), None, "expected exactly one record line");
    serde_json::from_str(first).expect("valid JSON record")
}

#[test]
fn dsum_prose_and_exit_zero() {
    let out = tausum(&["dsum", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("D(1000) = 7069"), "got: {text}");
}

#[test]
fn dsum_json_record_shape() {
    let out = tausum(&["dsum", "1000000", "--json", "--method", "fast"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert_eq!(v["n"], 1_000_000);
    assert_eq!(v["method"], "fast");
    assert_eq!(v["value"], 13_970_034);
    assert!(v["work"].as_u64().unwrap() > 0);
    assert!(v["segments"].as_u64().unwrap() > 0);
    assert!(v["corrections"].is_u64());
}

#[test]
fn dsum_methods_agree_through_the_cli() {
    let fast = json_line(&tausum(&["dsum", "99991", "--json", "--method", "fast"]));
    let hyp = json_line(&tausum(&["dsum", "99991", "--json", "--method", "hyperbola"]));
    let naive = json_line(&tausum(&["dsum", "99991", "--json", "--method", "naive"]));
    assert_eq!(fast["value"], hyp["value"]);
    assert_eq!(fast["value"], naive["value"]);
}

#[test]
fn dsum_interval_json() {
    let out = tausum(&["dsum-interval", "10", "20", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert_eq!(v["value"], 39);
    assert_eq!(v["n"], 20);
}

#[test]
fn sqfree_tau_json() {
    let out = tausum(&["sqfree-tau", "100", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert_eq!(v["x"], 100);
    assert_eq!(v["value"], 211);
    assert!(v["terms"].as_u64().unwrap() >= 4);
}

#[test]
fn prime_parity_json() {
    let out = tausum(&["prime-parity", "16", "16", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_line(&out);
    assert_eq!(v["n"], 16);
    assert_eq!(v["m_len"], 16);
    assert_eq!(v["mod4"], 2);
    assert_eq!(v["parity"], 1);
}

#[test]
fn find_prime_prints_bare_prime() {
    let out = tausum(&["find-prime", "16"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "23\n");
    assert!(stderr_of(&out).is_empty());
}

#[test]
fn find_prime_json_record() {
    let out = tausum(&["find-prime", "16", "--json"]);
    let v = json_line(&out);
    assert_eq!(v["n"], 16);
    assert_eq!(v["prime"], 23);
    assert_eq!(v["queries"], 5);
}

#[test]
fn even_count_exits_three_with_clean_stdout() {
    let out = tausum(&["find-prime", "10"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout_of(&out).is_empty(), "no result should reach stdout");
    let err = stderr_of(&out);
    assert!(err.contains("even"), "stderr should explain: {err}");
}

#[test]
fn usage_errors_exit_two() {
    // Unknown subcommand.
    assert_eq!(tausum(&["frobnicate"]).status.code(), Some(2));
    // Missing argument.
    assert_eq!(tausum(&["dsum"]).status.code(), Some(2));
    // Out-of-range input for the chosen method.
    let out = tausum(&["dsum", "200000000", "--method", "naive"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("exceeds the supported limit"));
    // Unknown method.
    assert_eq!(tausum(&["dsum", "10", "--method", "magic"]).status.code(), Some(2));
    // Zero-length window.
    assert_eq!(tausum(&["prime-parity", "0", "4"]).status.code(), Some(2));
}

#[test]
fn bad_tuning_exits_two() {
    let out = tausum(&["dsum", "1000", "--tune", "eta=3/4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("eta"));
    assert_eq!(tausum(&["dsum", "1000", "--tune", "bogus=1"]).status.code(), Some(2));
    assert_eq!(tausum(&["dsum", "1000", "--tune", "len"]).status.code(), Some(2));
}

#[test]
fn tuning_changes_cost_not_value() {
    let default = json_line(&tausum(&["dsum", "10000000", "--json"]));
    let tuned = json_line(&tausum(&[
        "dsum",
        "10000000",
        "--json",
        "--tune",
        "len=1/4",
        "--tune",
        "eta=1/8",
    ]));
    assert_eq!(default["value"], tuned["value"]);
    assert_ne!(default["work"], tuned["work"], "tuning should change the cost profile");
}

#[test]
fn bench_emits_records_and_fit() {
    let out = tausum(&[
        "bench", "--min-exp", "6", "--max-exp", "7", "--samples", "2", "--fit", "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let values: Vec<serde_json::Value> =
        text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(values.len(), 5, "4 bench records plus 1 fit record");
    for v in &values[..4] {
        assert_eq!(v["kind"], "bench");
        assert!(v["wall_ns"].as_u64().unwrap() > 0);
    }
    let fit = &values[4];
    assert_eq!(fit["kind"], "fit");
    assert!(fit["slope"].as_f64().unwrap().is_finite());
    assert_eq!(fit["points"], 4);
}

#[test]
fn bench_gate_failure_exits_five() {
    // An absurd cutoff multiplier turns the fast method into the plain
    // direct loop, whose exponent 1/2 trips the 0.45 gate.
    let out = tausum(&[
        "bench",
        "--min-exp",
        "6",
        "--max-exp",
        "9",
        "--fit",
        "--tune",
        "cut=1000000000",
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert!(stderr_of(&out).contains("exceeds"));
}

#[test]
fn threads_flag_is_accepted_and_harmless() {
    let one = json_line(&tausum(&["dsum", "100000000", "--json", "--threads", "1"]));
    let eight = json_line(&tausum(&["dsum", "100000000", "--json", "--threads", "8"]));
    assert_eq!(one["value"], eight["value"]);
    assert_eq!(one["work"], eight["work"]);
    assert_eq!(one["segments"], eight["segments"]);
    assert_eq!(one["corrections"], eight["corrections"]);
}

#[test]
fn selftest_passes() {
    let out = tausum(&["selftest"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("selftest passed"), "got: {text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn selftest_json_lines_parse() {
    let out = tausum(&["selftest", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    for line in stdout_of(&out).lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("selftest json");
        assert_eq!(v["kind"], "selftest");
        assert_eq!(v["ok"], true);
    }
}
