use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_weilstar")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn lagrangian_count_m1() {
    let out = run(&["lagrangians", "enumerate", "--p", "3", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["observations"]["count"], 4);
    assert_eq!(report["schema_version"], 1);
}

#[test]
fn compare_is_deterministic() {
    let args = ["weil", "compare", "--p", "3", "--m", "3", "--samples", "500", "--seed", "0"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), b.status.code());
    assert!(!a.stdout.is_empty());
}

#[test]
fn compare_passes_at_m1() {
    let out = run(&["weil", "compare", "--m", "1", "--samples", "200"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn failing_checks_exit_one_and_list_failures() {
    let out = run(&["weil", "compare", "--m", "3", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(1));
    let failures: Value = serde_json::from_slice(&out.stderr).expect("stderr lists failures as JSON");
    assert!(failures.as_array().is_some_and(|f| !f.is_empty()));
}

#[test]
fn invalid_configs_exit_two() {
    for args in [
        vec!["ring", "info", "--p", "4"],
        vec!["weil", "compare", "--m", "2"],
        vec!["weil", "compare", "--m", "3", "--involution", "identity"],
        vec!["ring", "info", "--tolerance", "0"],
        vec!["group", "normal-form", "[[1],[1],[1],[1]]"],
        vec!["group", "normal-form", "[[1],[0]]"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn normal_form_of_lower_unipotent() {
    let out = run(&["group", "normal-form", "[[1],[0],[1],[1]]"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["observations"]["cell"], "BwB");
    assert_eq!(report["observations"]["w_length"], 1);
}

#[test]
fn cocycle_csv_has_split_columns() {
    let out = run(&["cocycle", "table", "--m", "3", "--samples", "5", "--output", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("g_word,h_word,c_formula_re,c_formula_im"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn cache_dir_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let report = dir.path().join("report.json");
    let first = run(&["lagrangians", "enumerate", "--m", "3", "--cache-dir", cache, "--out", report.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert!(first.stdout.is_empty());
    assert!(dir.path().join("lagrangians_p3_e1_m3_negate_x.json").exists());
    let a = std::fs::read(&report).unwrap();
    let second = run(&["lagrangians", "enumerate", "--m", "3", "--cache-dir", cache]);
    assert_eq!(second.stdout, a);
}

#[test]
fn text_output_has_no_em_dash() {
    let out = run(&["connection", "verify", "--output", "text"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("connection verify on A_1 over F_3"));
    assert!(!text.contains('\u{2014}'));
}
