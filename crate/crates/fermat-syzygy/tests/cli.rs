//! End-to-end contract tests for the binary: exit codes, envelope shape,
//! frozen report contents, and CSV projections.

use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fermat-syzygy"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, got {:?}\n{}",
        out.status,
        String::from_utf8_lossy(&out.stdout)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON document")
}

fn stdout_text(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "expected success for {args:?}");
    String::from_utf8(out.stdout).expect("utf-8 output")
}

#[test]
fn envelope_carries_command_inputs_outputs_and_version() {
    let v = json(&["curve-info", "--d", "5", "--char", "7"]);
    assert_eq!(v["command"], "curve-info");
    assert_eq!(v["inputs"]["d"], 5);
    assert_eq!(v["inputs"]["char"], 7);
    assert_eq!(v["outputs"]["genus"], 6);
    assert_eq!(v["outputs"]["half_degree"], 2);
    assert_eq!(v["outputs"]["two_g_minus_two"], 10);
    assert!(v["timing_ms"].is_u64());
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn envelope_keys_are_sorted_in_the_rendered_text() {
    let text = stdout_text(&["curve-info", "--d", "3", "--char", "0"]);
    let order: Vec<usize> = ["\"command\"", "\"inputs\"", "\"outputs\"", "\"timing_ms\"", "\"version\""]
        .iter()
        .map(|k| text.find(k).unwrap_or_else(|| panic!("{k} missing")))
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "keys not sorted: {text}");
    assert!(text.ends_with('\n'));
}

#[test]
fn hn_reports_the_frozen_quintic_instance() {
    let v = json(&["hn", "--d", "5", "--p", "7"]);
    let hn = &v["outputs"]["hn"];
    assert_eq!(hn["k"], 2);
    assert_eq!(hn["m0"], 20);
    assert_eq!(hn["alpha"], 5);
    assert_eq!(hn["degree_at_m0"], -10);
    assert_eq!(hn["mu_max"], "5/1");
    assert_eq!(hn["mu_min"], "-5/1");
    assert_eq!(hn["section_space_dim"], 1);
    assert_eq!(hn["zero_free"]["certified"], true);
    assert_eq!(hn["zero_free"]["fills_at"], 13);
    let section: Vec<String> = hn["section"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect();
    assert_eq!(section.len(), 3);
    assert!(section.iter().any(|s| s != "0"));
}

#[test]
fn hn_rejects_a_prime_in_the_wrong_class_with_exit_2() {
    let out = run(&["hn", "--d", "5", "--p", "11"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["class"], "precondition");
    assert!(v["error"]["message"].as_str().unwrap().contains("11"));
}

#[test]
fn hk_csv_lists_samples_then_closed_forms() {
    let text = stdout_text(&["hk", "--d", "5", "--p", "2", "--e-max", "3", "--format", "csv"]);
    let expected = "row,e,q,colength,ratio\n\
                    sample,1,2,64,16/1\n\
                    sample,2,4,260,65/4\n\
                    sample,3,8,1040,65/4\n\
                    closed-form-monsky,,,,65/4\n\
                    closed-form-slopes,,,,65/4\n";
    assert_eq!(text, expected);
}

#[test]
fn hk_json_keeps_ratios_as_exact_strings() {
    let v = json(&["hk", "--d", "5", "--p", "7", "--e-max", "1"]);
    assert_eq!(v["outputs"]["samples"][0]["colength"], 739);
    assert_eq!(v["outputs"]["samples"][0]["ratio"], "739/49");
    assert_eq!(v["outputs"]["monsky_value"], "740/49");
    assert_eq!(v["outputs"]["hn_value"], "740/49");
    assert_eq!(v["outputs"]["capped"], false);
}

#[test]
fn ext_split_reports_the_section_deficit() {
    for p in ["2", "7", "17"] {
        let v = json(&["ext-split", "--d", "5", "--p", p]);
        assert_eq!(v["outputs"]["h0_observed"], 6);
        assert_eq!(v["outputs"]["h0_if_split"], 7);
        assert_eq!(v["outputs"]["verdict"], "non-split");
        assert_eq!(v["outputs"]["divisibility_certificate"], true);
    }
}

#[test]
fn elliptic_types_follow_the_residue() {
    let v = json(&["elliptic", "--p", "7"]);
    assert_eq!(v["outputs"]["bundle_type"], "nonsplit-self-extension");
    assert_eq!(v["outputs"]["h0"], 1);
    let v = json(&["elliptic", "--p", "5"]);
    assert_eq!(v["outputs"]["bundle_type"], "trivial");
    assert_eq!(v["outputs"]["h0"], 2);
}

#[test]
fn sections_prints_verified_triples() {
    let v = json(&["sections", "--d", "7", "--char", "3", "--exponents", "6,6,6", "--twist", "7"]);
    assert_eq!(v["outputs"]["dimension"], 1);
    assert_eq!(v["outputs"]["relations_verified"], true);
    assert_eq!(v["outputs"]["basis"][0], serde_json::json!(["X", "Y", "Z"]));
    assert_eq!(v["outputs"]["rank"], 2);
}

#[test]
fn hilbert_with_generators_reports_quotient_and_fill() {
    let v = json(&[
        "hilbert", "--d", "5", "--shift-range", "-1..5", "--gens", "X^2,Y^2,Z^2",
    ]);
    let rows = v["outputs"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    let quotients: Vec<i64> = rows
        .iter()
        .map(|r| r["quotient_dim"].as_i64().unwrap())
        .collect();
    assert_eq!(quotients, vec![0, 1, 3, 3, 1, 0, 0]);
    assert_eq!(v["outputs"]["fill"]["certified"], true);
    assert_eq!(v["outputs"]["fill"]["fills_at"], 4);
}

#[test]
fn hilbert_without_generators_omits_ideal_columns() {
    let v = json(&["hilbert", "--d", "5", "--shift-range", "0..2"]);
    let rows = v["outputs"]["rows"].as_array().unwrap();
    assert_eq!(rows[1]["hilbert_dim"], 3);
    assert!(rows[1]["ideal_dim"].is_null());
    assert!(v["outputs"]["fill"].is_null());
}

#[test]
fn hilbert_rejects_an_empty_window_with_exit_2() {
    let out = run(&["hilbert", "--d", "5", "--shift-range", "3..1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn scan_csv_matches_the_window() {
    let text = stdout_text(&[
        "scan", "--d", "5", "--exponents", "2,2,2", "--twist", "4", "--shift-range", "-2..1",
        "--format", "csv",
    ]);
    let expected = "shift,twist,degree,h0,status\n\
                    -2,2,-10,0,none\n\
                    -1,3,0,0,none\n\
                    0,4,10,3,none\n\
                    1,5,20,10,none\n";
    assert_eq!(text, expected);
}

#[test]
fn audit_echoes_the_scenario_and_names_the_contradiction_prime() {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        file.path(),
        r#"{"rank": 2, "slope_bound": 10, "deg_E": 0,
           "descent_primes": [7, 17, 37, 47, 67],
           "strong_ss_assumed": true,
           "generic_not_semistable_hypothesis": true}"#,
    )
    .unwrap();
    let v = json(&["audit", "--scenario", file.path().to_str().unwrap()]);
    assert_eq!(v["inputs"]["scenario"]["slope_bound"], "10/1");
    assert_eq!(v["outputs"]["conclusion"], "generically-semistable");
    assert_eq!(v["outputs"]["contradiction_prime"], 37);
    assert_eq!(v["outputs"]["degree_forced_zero"], true);
    assert!(v["outputs"]["trace"].as_array().unwrap().len() >= 3);
}

#[test]
fn audit_flags_a_degree_divisibility_break_as_inconsistent_scenario() {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        file.path(),
        r#"{"rank": 2, "slope_bound": "10/1", "deg_E": -10,
           "descent_primes": [7],
           "strong_ss_assumed": true,
           "generic_not_semistable_hypothesis": true}"#,
    )
    .unwrap();
    let v = json(&["audit", "--scenario", file.path().to_str().unwrap()]);
    assert_eq!(v["outputs"]["conclusion"], "inconsistent-scenario");
    assert!(v["outputs"]["contradiction_prime"].is_null());
}

#[test]
fn audit_missing_file_is_a_precondition_error() {
    let out = run(&["audit", "--scenario", "/no/such/scenario.json"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["error"]["class"], "precondition");
}

#[test]
fn audit_rejects_a_composite_descent_prime() {
    let file = tempfile::NamedTempFile::new().unwrap();
    std::fs::write(
        file.path(),
        r#"{"rank": 2, "slope_bound": "10/1", "deg_E": 0,
           "descent_primes": [7, 15],
           "strong_ss_assumed": true,
           "generic_not_semistable_hypothesis": true}"#,
    )
    .unwrap();
    let out = run(&["audit", "--scenario", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn replay_collates_per_prime_reports_in_ascending_order() {
    let v = json(&["replay", "--d", "5", "--primes", "17,2,7"]);
    assert_eq!(v["outputs"]["strong_ss_assumed"], false);
    assert_eq!(v["outputs"]["char_zero"]["semistable"], false);
    assert_eq!(v["outputs"]["char_zero"]["subbundle_slope"], "5/1");
    let per_prime = v["outputs"]["per_prime"].as_array().unwrap();
    let ps: Vec<u64> = per_prime.iter().map(|e| e["p"].as_u64().unwrap()).collect();
    assert_eq!(ps, vec![2, 7, 17]);
    for entry in per_prime {
        assert_eq!(entry["split"]["verdict"], "non-split");
        assert_eq!(entry["hn"]["alpha"], 5);
    }
}

#[test]
fn primes_lists_the_progression() {
    let v = json(&["primes", "--residue", "2", "--modulus", "5", "--count", "5"]);
    assert_eq!(v["outputs"]["primes"], serde_json::json!([2, 7, 17, 37, 47]));
}

#[test]
fn primes_exhausted_progression_is_a_precondition_error() {
    let out = run(&["primes", "--residue", "2", "--modulus", "4", "--count", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["error"]["message"]
        .as_str()
        .unwrap()
        .contains("no further primes"));
}

#[test]
fn usage_problems_exit_1_and_help_exits_0() {
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["hn", "--d", "5"]).status.code(), Some(1), "missing --p");
    assert_eq!(run(&["hn", "--d", "5", "--p", "x"]).status.code(), Some(1));
    assert_eq!(
        run(&["sections", "--d", "5", "--exponents", "2,2", "--twist", "1"])
            .status
            .code(),
        Some(1),
        "exponent triple must have three entries"
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["hn", "--help"]).status.code(), Some(0));
}

#[test]
fn worker_env_var_does_not_change_report_bytes() {
    let strip_timing = |text: &str| -> String {
        text.lines()
            .filter(|l| !l.trim_start().starts_with("\"timing_ms\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let args = ["replay", "--d", "5", "--primes", "2,7,17"];
    let serial = bin()
        .args(args)
        .env("FERMAT_SYZYGY_WORKERS", "1")
        .output()
        .unwrap();
    let parallel = bin()
        .args(args)
        .env("FERMAT_SYZYGY_WORKERS", "4")
        .output()
        .unwrap();
    assert!(serial.status.success() && parallel.status.success());
    assert_eq!(
        strip_timing(&String::from_utf8(serial.stdout).unwrap()),
        strip_timing(&String::from_utf8(parallel.stdout).unwrap())
    );
}
