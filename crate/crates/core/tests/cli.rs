use std::process::{Command, Output};

use serde_json::Value;

fn poincare(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_poincare")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = poincare(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn boosted_spinor_components() {
    let doc = json(&["spinor", "--kind", "u", "--r", "1", "--pz", "0.75", "--m", "1"]);
    let row = &doc["rows"][0];
    assert_eq!(f(&row["energy"]), 1.25);
    // norm sqrt((E + m) / 2m), lower entry pz / (E + m)
    let expect = [1.125f64.sqrt(), 0.0, 1.125f64.sqrt() / 3.0, 0.0];
    for (c, e) in row["components"].as_array().unwrap().iter().zip(expect) {
        assert!((f(&c["re"]) - e).abs() < 1e-15);
        assert_eq!(f(&c["im"]), 0.0);
    }
}

#[test]
fn rest_frame_v_spinor() {
    let doc = json(&["spinor", "--kind", "v", "--r", "2", "--m", "2"]);
    let re: Vec<f64> = doc["rows"][0]["components"].as_array().unwrap().iter().map(|c| f(&c["re"])).collect();
    assert_eq!(re, [0.0, 0.0, 0.0, 1.0]);
}

#[test]
fn usage_and_domain_errors_exit_2() {
    assert_eq!(poincare(&["spinor", "--kind", "u", "--r", "1"]).status.code(), Some(2));
    assert_eq!(poincare(&["spinor", "--kind", "u", "--r", "3", "--m", "1"]).status.code(), Some(2));
    assert_eq!(poincare(&["spinor", "--kind", "u", "--r", "1", "--m", "-1"]).status.code(), Some(2));
    let out = poincare(&["hypersph", "--l", "1/2", "--m", "1/2", "--theta", "1", "--tau", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
    assert_eq!(poincare(&["verify", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn undefined_kernel_index_is_a_domain_error() {
    let out = poincare(&["hypersph", "--l", "2", "--m", "1", "--theta", "1", "--tau", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn hypersph_grid_is_lexicographic() {
    let doc = json(&["hypersph", "--l", "1/2", "--m", "-1/2", "--theta", "0.1:3:10", "--tau", "0.1:5:10"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 100);
    let keys: Vec<(f64, f64)> = rows.iter().map(|r| (f(&r["theta"]), f(&r["tau"]))).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn hypersph_golden() {
    let doc = json(&["hypersph", "--l", "1/2", "--m", "1/2", "--theta", "1.5707963267948966", "--tau", "1"]);
    let v = &doc["rows"][0]["value"];
    assert!((f(&v["re"]) - 1.1729352093275557).abs() < 1e-14);
    assert!((f(&v["im"]) - 0.40650836666244223).abs() < 1e-14);
}

#[test]
fn csv_has_header_and_rows() {
    let out = poincare(&["--format", "csv", "hypersph", "--l", "3/2", "--m", "1/2", "--theta", "0.5,1", "--tau", "1:2:3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "theta,tau,phi,eps,re,im");
    assert_eq!(lines.len(), 7);
    assert!(lines[1..].iter().all(|l| l.split(',').count() == 6));
}

#[test]
fn wavefunction_point_matches_independent_value() {
    let doc = json(&[
        "wavefunction", "--theta", "1.5707963267948966", "--tau", "1", "--phi", "0.4", "--eps", "0.2", "--pz", "0.75",
        "--x4", "1", "--kappa", "0.5", "--kappa-dot", "0.5",
    ]);
    let psi = doc["rows"][0]["psi"].as_array().unwrap();
    let expect = [
        (0.35110201779334864, -0.71871661773083863),
        (0.0, 0.0),
        (0.060469491288881945, -0.27982798797874698),
        (0.0, 0.0),
    ];
    for (c, (re, im)) in psi.iter().zip(expect) {
        assert!((f(&c["re"]) - re).abs() < 1e-14 && (f(&c["im"]) - im).abs() < 1e-14, "{c}");
    }
}

#[test]
fn negative_axis_values_parse() {
    let out = poincare(&["--format", "csv", "wavefunction", "--theta", "1", "--tau", "1", "--x1", "-2:-1:2", "--phi", "-0.5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8(out.stdout).unwrap().lines().count(), 3);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(poincare(&["verify", "--suite", "gamma"]).status.code(), Some(0));
    assert_eq!(poincare(&["verify", "--suite", "radial", "--tol", "1e-15"]).status.code(), Some(1));
}

#[test]
fn output_file_is_written() {
    let dir = std::env::temp_dir().join(format!("poincare-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let out = poincare(&["--out", path.to_str().unwrap(), "spinor", "--kind", "u", "--r", "1", "--m", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["command"], "spinor");
    std::fs::remove_dir_all(dir).unwrap();
}
