use std::path::Path;
use std::process::{Command, Output};

fn udode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_udode")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn approximate_sine(dir: &Path) -> std::path::PathBuf {
    let out = dir.join("sol.json");
    let o = udode(&[
        "approximate",
        "--phi",
        "sin(x)",
        "--a",
        "0",
        "--b",
        "6.283185307179586",
        "--eps",
        "0.01",
        "--n",
        "4",
        "--samples",
        "10000",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

#[test]
fn approximate_sine_then_certify() {
    let dir = tempfile::tempdir().unwrap();
    let sol = approximate_sine(dir.path());
    let o = udode(&["certify", "--solution", sol.to_str().unwrap(), "--points", "50", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["summary"]["max_normalized"].as_f64().unwrap() <= 1e-8);
    assert!(v.get("per_point").is_none());
}

#[test]
fn approximate_reports_error_as_json() {
    let o = udode(&["approximate", "--phi", "tanh(3*x)", "--a", "-2", "--b", "2", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["max_abs_err"].as_f64().unwrap() < 0.01);
    assert_eq!(v["grid_size"], 10000);
}

#[test]
fn constant_target_gives_zero_error() {
    let o = udode(&["approximate", "--phi", "5", "--a", "0", "--b", "1", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["max_abs_err"], 0.0);
    assert_eq!(v["knots"], 2);
}

#[test]
fn sample_csv_has_fixed_columns() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let o = udode(&["approximate", "--phi", "x^2", "--a", "-1", "--b", "1", "--samples", "11", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,y,phi,abs_err");
    assert_eq!(lines.len(), 12);
    assert_eq!(lines[1].split(',').next().unwrap(), "-1.0000000000000000e0");
}

#[test]
fn tabulated_target() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("phi.csv");
    std::fs::write(&table, "x,y\n0,0\n1,1\n2,0.5\n3,2\n").unwrap();
    let o = udode(&["approximate", "--phi-csv", table.to_str().unwrap(), "--a", "0", "--b", "3", "--eps", "0.05"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn outputs_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let sa = std::fs::read(approximate_sine(a.path())).unwrap();
    let sb = std::fs::read(approximate_sine(b.path())).unwrap();
    assert_eq!(sa, sb);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["approximate", "--phi", "x", "--a", "0", "--b", "1", "--eps", "-1"][..],
        &["approximate", "--phi", "x", "--a", "1", "--b", "0"],
        &["approximate", "--phi", "2x", "--a", "0", "--b", "1"],
        &["approximate", "--phi", "x", "--a", "0", "--b", "1", "--n", "3"],
        &["approximate", "--a", "0", "--b", "1"],
        &["elliptic", "--m", "1.5", "--x", "0"],
        &["certify", "--solution", "/nonexistent/sol.json"],
        &["frobnicate"],
    ] {
        let o = udode(args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn malformed_solution_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, r#"{"n": 4, "interval": [0, 1], "segments": []}"#).unwrap();
    assert_ne!(code(&udode(&["certify", "--solution", p.to_str().unwrap()])), 0);
}

#[test]
fn corrupted_gamma_fails_certification() {
    let dir = tempfile::tempdir().unwrap();
    let sol = approximate_sine(dir.path());
    let mut v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&sol).unwrap()).unwrap();
    let g = v["segments"][3]["gamma"].as_f64().unwrap();
    v["segments"][3]["gamma"] = (g * 1.05).into();
    std::fs::write(&sol, serde_json::to_string(&v).unwrap()).unwrap();
    let o = udode(&["certify", "--solution", sol.to_str().unwrap(), "--points", "20"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn elliptic_table() {
    let o = udode(&["elliptic", "--m", "0.5", "--x", "0,K,-0.5K"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("# K = 1.85407467730137"));
    assert_eq!(lines[1], "x,sn,cn,dn");
    let row: Vec<f64> = lines[3].split(',').map(|s| s.parse().unwrap()).collect();
    assert!((row[1] - 1.0).abs() < 1e-12 && row[2].abs() < 1e-12 && (row[3] - 0.5f64.sqrt()).abs() < 1e-12);
    assert_eq!(lines[2], "0.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0,1.0000000000000000e0");

    let o = udode(&["elliptic", "--m", "0", "--x", "1.1,-2.5"]);
    for line in stdout(&o).lines().skip(2) {
        let v: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        assert!((v[1] - v[0].sin()).abs() < 1e-15 && (v[2] - v[0].cos()).abs() < 1e-15 && v[3] == 1.0);
    }
}

#[test]
fn verify_identity_passes_and_detects_wrong_row() {
    let o = udode(&["verify-identity"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.trim_start().starts_with("PASS  m=")).count(), 3);
    assert!(out.contains("-> (1, -3, 2)"));

    let o = udode(&["verify-identity", "--perturb-b", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("residual: n^"));

    let o = udode(&["verify-identity", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["limit"]["expected"], serde_json::json!([1, -3, 2]));
}
