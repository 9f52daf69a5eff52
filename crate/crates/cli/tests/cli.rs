use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn qdent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdent")).args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    std::fs::write(&p, v.to_string()).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn entropy_of_hadamard_in_computational_basis() {
    let v = stdout_json(&qdent(&["entropy", "--gate", "H"]));
    assert!((v["rate"].as_f64().unwrap() - 2f64.ln()).abs() < 1e-11);
    assert_eq!(v["measurement"].as_f64().unwrap(), 0.0);
}

#[test]
fn unitary_file_and_gate_shortcut_agree() {
    let dir = tempfile::tempdir().unwrap();
    let s = 0.5f64.sqrt();
    let h = json!({"dim": 2, "rows": [[[s, 0.0], [s, 0.0]], [[s, 0.0], [-s, 0.0]]]});
    let path = write(dir.path(), "h.json", &h);
    let a = stdout_json(&qdent(&["entropy", "--unitary", &path, "--sic"]));
    let b = stdout_json(&qdent(&["entropy", "--gate", "H", "--sic"]));
    assert_eq!(a, b);
}

#[test]
fn dimension_mismatch_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let povm = json!({"dim": 3, "vectors": [[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]]});
    let path = write(dir.path(), "p.json", &povm);
    let out = qdent(&["entropy", "--gate", "H", "--povm", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('2') && err.contains('3'), "{err}");
}

#[test]
fn malformed_and_non_unitary_input_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    assert_eq!(qdent(&["maxent", "--unitary", bad.to_str().unwrap()]).status.code(), Some(2));
    let m = json!({"dim": 2, "rows": [[[1.0, 0.0], [1.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]});
    let path = write(dir.path(), "m.json", &m);
    assert_eq!(qdent(&["classify", "--unitary", &path]).status.code(), Some(2));
    assert_eq!(qdent(&["classify", "--gate", "NOPE"]).status.code(), Some(2));
    assert_eq!(qdent(&["haar", "--dim", "4", "--stat", "volume", "--samples", "100"]).status.code(), Some(2));
}

#[test]
fn maxent_basis_round_trips_through_json() {
    let dir = tempfile::tempdir().unwrap();
    let v = stdout_json(&qdent(&["maxent", "--gate", "FOURIER:3"]));
    assert_eq!(v["certified_chaotic"], Value::Bool(true));
    let basis = write(dir.path(), "basis.json", &v["basis"]);
    let e = stdout_json(&qdent(&["entropy", "--gate", "FOURIER:3", "--pvm", &basis]));
    assert!((e["rate"].as_f64().unwrap() - 3f64.ln()).abs() < 1e-6);
}

#[test]
fn classify_reports_method() {
    let v = stdout_json(&qdent(&["classify", "--gate", "TOFFOLI"]));
    assert_eq!(v["status"], "NotChaotic");
    assert_eq!(v["method"], "TraceNecessary");
    let v = stdout_json(&qdent(&["classify", "--gate", "FOURIER:3"]));
    assert_eq!(v["status"], "Chaotic");
    assert_eq!(v["method"], "ExactD3");
}

#[test]
fn curve_row_counts() {
    let out = qdent(&["curve", "--fig", "1", "--samples", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 12);
    assert_eq!(text.lines().next(), Some("theta,hdyn"));

    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fig4.csv");
    assert!(qdent(&["curve", "--fig", "4", "--samples", "64", "--out", csv.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 1 + 7 * 65);
    let regions: std::collections::BTreeSet<_> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(regions.len(), 7);
}

#[test]
fn haar_estimates_are_deterministic() {
    let args = ["haar", "--dim", "3", "--stat", "mean-fixed", "--samples", "2000", "--seed", "5", "--workers", "3"];
    let a = stdout_json(&qdent(&args));
    assert_eq!(a, stdout_json(&qdent(&args)));
    assert_eq!(a["worker_count"], 3);
    assert_eq!(a["samples"], 2000);
    for key in ["mean", "std_error", "seed"] {
        assert!(a.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn weyl_volume_d2() {
    let v = stdout_json(&qdent(&["weyl", "--dim", "2", "--stat", "volume"]));
    assert!((v["value"].as_f64().unwrap() - (0.5 + 1.0 / std::f64::consts::PI)).abs() < 1e-6);
}
