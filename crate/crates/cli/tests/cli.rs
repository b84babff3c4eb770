//! End-to-end checks of the `permop` binary: output contents, exit codes,
//! and byte determinism.

use std::process::{Command, Output};

fn permop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn counts_milgram_n3() {
    let out = permop(&["counts", "--space", "milgram", "-n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("6/12/6"), "{text}");
    assert!(text.contains("all 6 vertex orders agree"), "{text}");
}

#[test]
fn counts_cact_n5_per_k() {
    let out = permop(&["counts", "--space", "cact", "-n", "5", "--per-k"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("k=1: 15, k=2: 30, k=3: 36, k=4: 24 (total 105)"), "{text}");
    assert!(text.contains("--allow-large"), "{text}");
}

#[test]
fn counts_n1() {
    let out = permop(&["counts", "-n", "1"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("1 cell"));
}

#[test]
fn verify_homology_n3_passes() {
    let out = permop(&["verify", "--suite", "homology", "-n", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1, 3, 2]"), "{text}");
    assert!(text.trim_end().ends_with("pass"), "{text}");
}

#[test]
fn verify_operad_n4_passes() {
    let out = permop(&["verify", "--suite", "operad", "-n", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("support 15"), "{text}");
    assert!(text.contains("multiplicities one: true"), "{text}");
}

#[test]
fn verify_all_n2_passes() {
    let out = permop(&["verify", "--suite", "all", "-n", "2"]);
    assert!(out.status.success());
}

#[test]
fn verify_json_report() {
    let out = permop(&["verify", "--suite", "poset", "-n", "3", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let json_start = text.find('{').expect("report present");
    let report: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(report["suite"], "poset");
    assert_eq!(report["pass"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 2);
}

#[test]
fn unknown_suite_is_usage_error() {
    let out = permop(&["verify", "--suite", "bogus", "-n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_range_n_is_usage_error() {
    let out = permop(&["verify", "--suite", "geometry", "-n", "5"]);
    assert_eq!(out.status.code(), Some(2));
    let out = permop(&["counts", "-n", "6"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_flag_is_usage_error() {
    let out = permop(&["verify", "--nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn export_cact_n3_json() {
    let out = permop(&["export", "--space", "cact", "-n", "3", "--format", "json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["f_vector"], serde_json::json!([6, 18, 12]));
}

#[test]
fn export_subdivision_off() {
    let out = permop(&["export", "--subdivision", "4321", "--format", "off"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("OFF\n"), "{text}");
}

#[test]
fn export_cact_n5_gated() {
    let out = permop(&["export", "--space", "cact", "-n", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["verify", "--suite", "trees", "-n", "3", "--format", "json"];
    let a = permop(&args);
    let b = permop(&args);
    assert_eq!(a.stdout, b.stdout);
    let env_run = Command::new(env!("CARGO_BIN_EXE_permop"))
        .args(args)
        .env("PERMOP_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(a.stdout, env_run.stdout);
}

#[test]
fn explicit_seed_changes_report_field_only() {
    let a = permop(&["verify", "--suite", "trees", "-n", "3", "--format", "json", "--seed", "7"]);
    assert!(a.status.success());
    let text = stdout(&a);
    let json_start = text.find('{').unwrap();
    let report: serde_json::Value = serde_json::from_str(&text[json_start..]).unwrap();
    assert_eq!(report["seed"], 7);
    assert_eq!(report["pass"], true);
}
