//! End-to-end behavior of the `eigengap` binary: argument handling, the
//! config-file merge, output formats, and the exit-code contract.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_eigengap"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is utf-8")
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is utf-8")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("eigengap-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn unknown_domain_kind_exits_2() {
    let out = run(&["spectrum", "--domain", "blob:1"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr_str(&out));
    assert!(stderr_str(&out).contains("unknown domain kind"));
}

#[test]
fn unsupported_ball_dimension_exits_2() {
    let out = run(&["spectrum", "--domain", "ball:n=4,R=1"]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr_str(&out));
    assert!(stderr_str(&out).contains("dimensions 2 and 3"));
}

#[test]
fn missing_required_flag_is_a_usage_error() {
    let out = run(&["check", "--domain", "box:1,1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn torus_csv_emits_exactly_the_requested_rows() {
    let out = run(&[
        "spectrum",
        "--domain",
        "torus:1,1",
        "--count",
        "10",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,value,label,mult");
    assert_eq!(lines.len(), 11);
    assert_eq!(lines[1], "0,0,0,1");
}

#[test]
fn yang1_on_the_square_holds_through_k_200() {
    let out = run(&[
        "check",
        "--inequality",
        "yang1",
        "--domain",
        "box:1,1",
        "--kmax",
        "200",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let reports: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    let arr = reports.as_array().unwrap();
    assert_eq!(arr.len(), 200);
    assert!(arr.iter().all(|r| r["holds"] == serde_json::json!(true)));
}

#[test]
fn unknown_inequality_token_exits_2() {
    let out = run(&[
        "check",
        "--inequality",
        "yang3",
        "--domain",
        "box:1,1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("unknown inequality"));
}

#[test]
fn verify_prop1_reports_a_holding_verdict() {
    let out = run(&["verify-prop", "--id", "prop1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["conjecture_id"], "Prop1");
    assert_eq!(v["holds"], serde_json::json!(true));
    assert_eq!(v["arithmetic"], "exact");
    assert_eq!(v["k_range"], serde_json::json!([1, 100]));
}

#[test]
fn verify_prop2_rejects_a_dimension_flag() {
    let out = run(&["verify-prop", "--id", "prop2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("cube proposition"));
}

#[test]
fn config_supplies_defaults_and_explicit_flags_win() {
    let cfg = temp_path("config.json");
    std::fs::write(
        &cfg,
        r#"{"command": "spectrum", "domain": "interval:1", "kmax": 4, "format": "csv"}"#,
    )
    .unwrap();
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let text = stdout_str(&out);
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("index,value,label,mult"));

    let out = run(&[
        "spectrum",
        "--config",
        cfg.to_str().unwrap(),
        "--count",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["guaranteed_count"], serde_json::json!(2));
    std::fs::remove_file(&cfg).ok();
}

#[test]
fn config_naming_a_different_command_exits_2() {
    let cfg = temp_path("mismatch.json");
    std::fs::write(&cfg, r#"{"command": "check", "domain": "box:1,1"}"#).unwrap();
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("config names command"));
    std::fs::remove_file(&cfg).ok();
}

#[test]
fn config_with_unknown_fields_exits_2() {
    let cfg = temp_path("unknown.json");
    std::fs::write(&cfg, r#"{"domain": "box:1,1", "threads": 4}"#).unwrap();
    let out = run(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("malformed config"));
    std::fs::remove_file(&cfg).ok();
}

#[test]
fn float_precision_strips_labels() {
    let out = run(&[
        "spectrum",
        "--domain",
        "box:1,1",
        "--count",
        "4",
        "--precision",
        "float",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    for entry in v["entries"].as_array().unwrap() {
        assert_eq!(entry["label"], serde_json::Value::Null);
    }
}

#[test]
fn conjecture_failures_are_recorded_not_asserted() {
    let out = run(&[
        "conjecture",
        "--id",
        "ConZ1prime_S2",
        "--domain",
        "tri-eq:D=1",
        "--kmax",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["holds"], serde_json::json!(false));
    assert!(stderr_str(&out).contains("recorded, not asserted"));
}

#[test]
fn conjecture_coefficient_must_match_the_identifier() {
    let out = run(&[
        "conjecture",
        "--id",
        "ConZ1_S1",
        "--coeff",
        "s2",
        "--domain",
        "box:1,1",
    ]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&[
        "conjecture",
        "--id",
        "ConZ1_S1",
        "--coeff",
        "s1",
        "--domain",
        "box:1,1",
        "--kmax",
        "20",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
}

#[test]
fn triangle_pair_scan_refuses_a_range() {
    let out = run(&["scan", "--family", "triangle-pair", "--range", "1:2:1"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["scan", "--family", "triangle-pair", "--kmax", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let v: serde_json::Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert!(v["family"].as_str().unwrap().contains("triangle"));
}

#[test]
fn rectangle_scan_requires_a_range() {
    let out = run(&["scan", "--family", "rectangles"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("missing --range"));
}

#[test]
fn report_rejects_an_unknown_mutation_id() {
    let out = run(&["report", "--suite", "paper", "--mutate", "c99"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("unknown mutation"));
}

#[test]
fn output_flag_writes_the_file_and_keeps_stdout_clean() {
    let path = temp_path("spectrum.json");
    let out = run(&[
        "spectrum",
        "--domain",
        "interval:1",
        "--count",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["guaranteed_count"], serde_json::json!(3));
    std::fs::remove_file(&path).ok();
}

#[test]
fn bounds_table_renders_the_gap_and_bound_columns() {
    let out = run(&[
        "bounds",
        "--domain",
        "box:1,1",
        "--kmax",
        "5",
        "--format",
        "table",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr_str(&out));
    let text = stdout_str(&out);
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("k "));
    assert!(header.contains("actual_gap"));
    assert!(header.contains("czy-gap"));
    assert!(header.contains("ppw"));
    assert_eq!(text.lines().count(), 6);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["bounds", "--domain", "tri-eq:D=1", "--kmax", "30"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0), "{}", stderr_str(&a));
    assert_eq!(a.stdout, b.stdout);
}
