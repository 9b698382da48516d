//! End-to-end checks of the command-line binary: exit codes, output
//! determinism modulo timing, parse diagnostics with positions, and
//! loading problems both by path and by bundled name.

use std::path::PathBuf;
use std::process::{Command, Output};

fn dgcm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgcm"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8 stderr")
}

/// Drop the timing line so byte comparisons see only deterministic content.
fn strip_timing(s: &str) -> String {
    s.lines()
        .filter(|l| !l.trim_start().starts_with("\"timing_ms\"") && !l.starts_with("timing_ms:"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("dgcm-cli-test-{}-{name}", std::process::id()));
    p
}

#[test]
fn check_cm_by_bundled_name_succeeds() {
    let out = dgcm(&["check-cm", "reg-not-par"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("local verdict: CM"), "output:\n{text}");
    assert!(text.contains("amp"), "output:\n{text}");
}

#[test]
fn json_output_is_deterministic_modulo_timing() {
    let a = dgcm(&["check-cm", "reg-not-par", "--format", "json"]);
    let b = dgcm(&["check-cm", "reg-not-par", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(strip_timing(&stdout(&a)), strip_timing(&stdout(&b)));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&a)).expect("valid json");
    assert_eq!(parsed["schema"], 1);
    assert_eq!(parsed["local_cm"]["verdict"], "CM");
}

#[test]
fn text_output_is_deterministic_modulo_timing() {
    let a = dgcm(&["analyze", "localiz-counterexample"]);
    let b = dgcm(&["analyze", "localiz-counterexample"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(strip_timing(&stdout(&a)), strip_timing(&stdout(&b)));
    assert!(stdout(&a).contains("local verdict: CM"));
}

#[test]
fn assert_flag_exits_zero_on_cm() {
    let out = dgcm(&["check-cm", "reg-not-par", "--assert"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
}

#[test]
fn assert_flag_exits_two_on_not_cm() {
    let out = dgcm(&["check-cm-global", "non-cm-witness", "--assert"]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("NOT_CM"));
}

#[test]
fn missing_file_exits_one() {
    let out = dgcm(&["check-cm", "/no/such/problem.dgcm"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("error"), "stderr: {}", stderr(&out));
}

#[test]
fn parse_diagnostics_carry_positions() {
    let path = temp_path("broken.dgcm");
    std::fs::write(&path, "{\n  \"variables\": [\"x\"],\n  \"construction\": {\n").unwrap();
    let out = dgcm(&["check-cm", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("parse error at"), "stderr: {err}");
}

#[test]
fn inhomogeneous_input_is_rejected() {
    let path = temp_path("inhomog.dgcm");
    std::fs::write(
        &path,
        r#"{
  "variables": ["x", "y"],
  "ideal": ["x^2 - y"],
  "construction": {"type": "koszul", "elements": ["x"]}
}"#,
    )
    .unwrap();
    let out = dgcm(&["check-cm", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("homogeneous"), "stderr: {}", stderr(&out));
}

#[test]
fn file_path_and_bundled_name_agree() {
    let listing = dgcm(&["examples", "--format", "json"]);
    assert_eq!(listing.status.code(), Some(0));
    let parsed: serde_json::Value = serde_json::from_str(&stdout(&listing)).unwrap();
    let examples = parsed["examples"].as_array().unwrap();
    assert!(examples.len() >= 9);

    // Extract one bundled problem, write it to disk, and compare reports.
    let by_name = dgcm(&["check-cm", "reg-not-par", "--format", "json"]);
    let fixture = std::fs::read_to_string(
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/reg-not-par.dgcm"),
    )
    .unwrap();
    let path = temp_path("copy.dgcm");
    std::fs::write(&path, fixture).unwrap();
    let by_path = dgcm(&["check-cm", path.to_str().unwrap(), "--format", "json"]);
    std::fs::remove_file(&path).ok();
    assert_eq!(by_path.status.code(), Some(0));
    assert_eq!(
        strip_timing(&stdout(&by_name)),
        strip_timing(&stdout(&by_path))
    );
}

#[test]
fn prime_flag_drives_stratum_check() {
    let out = dgcm(&[
        "check-cm-at",
        "localiz-counterexample",
        "--prime",
        "x,y",
    ]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("NOT_CM"), "output:\n{text}");
}

#[test]
fn unknown_format_exits_one() {
    let out = dgcm(&["check-cm", "reg-not-par", "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unknown format"));
}

#[test]
fn regseq_reports_sequence() {
    let out = dgcm(&["regseq", "reg-not-par"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("regular sequence"), "output:\n{text}");
}

#[test]
fn verify_runs_theorem_suite() {
    let out = dgcm(&["verify", "localiz-counterexample"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("[ok]"), "output:\n{text}");
    assert!(!text.contains("[FAIL]"), "output:\n{text}");
}

#[test]
fn help_exits_zero() {
    let out = dgcm(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("Usage"));
}
