use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn qapbound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qapbound")).args(args).output().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn solve_toy() {
    let toy = fixture("toy.dd");
    for method in ["bca", "hung", "hung-ri"] {
        let v = stdout_json(&qapbound(&["solve", "--input", path(&toy), "--method", method, "--max-iters", "50"]));
        assert_eq!(v["method"], method);
        let bound = v["final_bound"].as_f64().unwrap();
        assert!(bound <= -5.5 + 1e-9, "{method}: {bound}");
        assert!(bound >= v["initial_bound"].as_f64().unwrap());
    }
}

#[test]
fn solve_csv_and_trajectory() {
    let toy = fixture("toy.dd");
    let out = qapbound(&["solve", "--input", path(&toy), "--max-iters", "3", "--output", "csv", "--trajectory"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("instance,method,iterations"));
    assert_eq!(lines.next().unwrap().split(',').next_back().unwrap().split(';').count(), 3);
}

#[test]
fn qaplib_offset() {
    let dat = fixture("tiny.dat");
    let v = stdout_json(&qapbound(&["solve", "--input", path(&dat), "--qaplib", "--augment", "--method", "hung"]));
    let bound = v["final_bound"].as_f64().unwrap() + v["offset"].as_f64().unwrap();
    assert!(bound <= 20.0 + 1e-6, "{bound}");
}

#[test]
fn lap_example1() {
    let v = stdout_json(&qapbound(&["lap", "--input", path(&fixture("example1.lap"))]));
    assert_eq!(v["value"], 24.0);
    assert_eq!(v["relative_interior"], true);
    let v = stdout_json(&qapbound(&["lap", "--input", path(&fixture("example1.lap")), "--mode", "optimal"]));
    assert_eq!(v["value"], 24.0);
    assert_eq!(v["shifted"], false);
}

#[test]
fn verify_passes_on_fixtures() {
    let v = stdout_json(&qapbound(&["verify", "--input", path(&fixture("toy.dd"))]));
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true));
    let v = stdout_json(&qapbound(&["verify", "--input", path(&fixture("example1.lap"))]));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn batch_table() {
    let out = qapbound(&["batch", "--manifest", path(&fixture("synthetic/manifest.toml"))]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("synthetic-dd"));
    assert!(text.contains("synthetic-qaplib"));
    assert!(text.lines().next().unwrap().contains("hung-ri #"));
}

#[test]
fn exit_codes() {
    let out = qapbound(&["solve", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = qapbound(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let out = qapbound(&["solve", "--input", "/nonexistent/x.dd"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/nonexistent/x.dd"));
}

#[test]
fn malformed_file_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.dd");
    std::fs::write(&file, "p 2 2 2 0\na 0 0 0 1\na 1 1 x 1\n").unwrap();
    let out = qapbound(&["solve", "--input", path(&file)]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 3"), "{err}");
}
