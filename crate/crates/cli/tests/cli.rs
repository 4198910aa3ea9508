use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn revolve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_revolve")).args(args).output().expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = revolve(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    revolve(args).status.code().expect("exit code")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn check<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["checks"].get(name).unwrap_or_else(|| panic!("no check {name} in {report}"))
}

fn entries(dir: &Path) -> Vec<String> {
    let mut v: Vec<String> = fs::read_dir(dir).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    v.sort();
    v
}

#[test]
fn catenoid_from_parallel_curvature_is_minimal() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("cat");
    let listed = ok(&["prescribe", "--kind", "kp", "--expr", "1/x^2", "--domain", "1.001:3", "--out", path(&d)]);
    assert_eq!(listed.lines().count(), 2);
    assert_eq!(entries(&d), ["momentum.csv", "source.json"]);
    let report: Value = serde_json::from_str(&ok(&["verify", "--source", path(&d), "--expect-h", "0"])).unwrap();
    assert_eq!(report["pass"], true);
    assert!(check(&report, "expect_h")["max"].as_f64().unwrap() < 1e-6);
    assert!(check(&report, "expect_h_discrete")["max"].as_f64().unwrap() < 1e-6);
    assert!(check(&report, "prescription_round_trip")["max"].as_f64().unwrap() < 1e-12);
}

#[test]
fn transonducycloid_has_gauss_curvature_quarter_over_x() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("t");
    ok(&["catalog", "build", "transonducycloid", "--param", "R=1", "--param", "a=0", "--out", path(&d)]);
    assert_eq!(entries(&d), ["entry.json", "profile.csv", "source.json"]);
    let report: Value =
        serde_json::from_str(&ok(&["verify", "--source", path(&d), "--profile", path(&d), "--expect-kg", "0.25/x"])).unwrap();
    let r = &report["curvature"]["kg_x"];
    assert!((r["min"].as_f64().unwrap() - 0.25).abs() <= 1e-3);
    assert!((r["max"].as_f64().unwrap() - 0.25).abs() <= 1e-3);
    assert!(check(&report, "expect_kg_discrete")["max"].as_f64().unwrap() <= 1e-3);
    assert_eq!(report["pass"], true);
}

#[test]
fn mean_inverse_classification() {
    assert_eq!(ok(&["classify-mean-inverse", "--mu", "0.5"]), "Parabolic\n");
    assert_eq!(ok(&["classify-mean-inverse", "--mu", "0.3"]), "Trigonometric\n");
    assert_eq!(ok(&["classify-mean-inverse", "--mu", "2"]), "Hyperbolic\n");
    let j: Value = serde_json::from_str(&ok(&["classify-mean-inverse", "--mu", "0.25", "--json"])).unwrap();
    assert_eq!(j["branch"], "trigonometric");
    assert!((j["theta"].as_f64().unwrap() - std::f64::consts::FRAC_PI_6).abs() < 1e-15);
    assert_eq!(code(&["classify-mean-inverse", "--mu", "-1"]), 2);
    assert_eq!(code(&["classify-mean-inverse", "--mu", "0"]), 2);
}

#[test]
fn torus_constraint_and_its_falsification() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("torus");
    ok(&["prescribe", "--kind", "kp", "--expr", "1 - a/x", "--param", "a=2", "--domain", "1:3", "--out", path(&d)]);
    let base = ["verify", "--source", path(&d), "--start", "2", "--expr-h", "1 - 1/x", "--expr-kg", "1 - 2/x"];
    let report: Value = serde_json::from_str(&ok(&base)).unwrap();
    assert!(check(&report, "constraint")["max"].as_f64().unwrap() < 1e-9);

    let out = tmp.path().join("report");
    let mut args = base.to_vec();
    args.extend(["--gamma-h", "0.1", "--c-g", "2", "--out", path(&out)]);
    let run = revolve(&args);
    assert_eq!(run.status.code(), Some(1));
    let written = fs::read_to_string(out.join("report.json")).unwrap();
    assert_eq!(written, String::from_utf8(run.stdout).unwrap());
    let report: Value = serde_json::from_str(&written).unwrap();
    assert!(check(&report, "constraint")["max"].as_f64().unwrap() > 1e-3);
    assert_eq!(report["pass"], false);
}

#[test]
fn weingarten_check_on_a_catalog_surface() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("hk");
    ok(&["catalog", "build", "hopf_kuhnel", "--param", "q=-0.5", "--out", path(&d)]);
    let report: Value =
        serde_json::from_str(&ok(&["verify", "--source", path(&d), "--profile", path(&d), "--q", "-0.5"])).unwrap();
    assert!(check(&report, "weingarten")["max"].as_f64().unwrap() < 1e-12);
    assert_eq!(code(&["verify", "--source", path(&d), "--profile", path(&d), "--q", "2"]), 1);
}

#[test]
fn identical_command_lines_give_identical_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let d = tmp.path().join(name);
        ok(&["prescribe", "--kind", "mean", "--expr", "0.5", "--const", "0.3", "--anchor", "origin", "--domain", "0.3:2", "--out", path(&d)]);
        ok(&["profile", "--source", path(&d), "--start", "1", "--length", "6", "--out", path(&d)]);
        ok(&["mesh", "--profile", path(&d), "--ntheta", "24", "--out", path(&d)]);
        ok(&["mesh", "--profile", path(&d), "--ntheta", "24", "--format", "stl", "--out", path(&d)]);
        ok(&["verify", "--source", path(&d), "--profile", path(&d), "--out", path(&d)]);
        d
    };
    let (a, b) = (run("a"), run("b"));
    let names = entries(&a);
    assert_eq!(names, ["mesh.obj", "mesh.stl", "momentum.csv", "profile.csv", "report.json", "source.json"]);
    assert_eq!(names, entries(&b));
    for n in &names {
        assert_eq!(fs::read(a.join(n)).unwrap(), fs::read(b.join(n)).unwrap(), "{n} differs");
    }
    let stl = fs::read(a.join("mesh.stl")).unwrap();
    let count = u32::from_le_bytes(stl[80..84].try_into().unwrap()) as usize;
    assert_eq!(stl.len(), 84 + 50 * count);
}

#[test]
fn catalog_listing() {
    let list: Value = serde_json::from_str(&ok(&["catalog", "list"])).unwrap();
    let names: Vec<&str> = list.as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(names.len(), 13);
    assert!(names.contains(&"transonducycloid") && names.contains(&"hopf_kuhnel"));
    assert_eq!(code(&["catalog", "build", "nosuch", "--out", "/nonexistent/x"]), 2);
}

#[test]
fn validation_errors_exit_2_without_artifacts() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("out");
    let d = path(&d);
    let cases: &[&[&str]] = &[
        &["prescribe", "--kind", "kp", "--expr", "1/(x", "--domain", "1:2", "--out", d],
        &["prescribe", "--kind", "kp", "--expr", "y/x", "--domain", "1:2", "--out", d],
        &["prescribe", "--kind", "kp", "--expr", "1/x", "--domain", "2:1", "--out", d],
        &["prescribe", "--kind", "kp", "--expr", "1/x", "--domain", "1-2", "--out", d],
        &["prescribe", "--kind", "kp", "--expr", "2", "--domain", "1:2", "--out", d],
        &["prescribe", "--kind", "gauss", "--expr", "-5", "--domain", "1:2", "--out", d],
        &["prescribe", "--kind", "kp", "--expr", "1/x", "--domain", "1:2", "--sign", "0", "--out", d],
        &["prescribe", "--kind", "curly", "--expr", "1/x", "--domain", "1:2", "--out", d],
        &["catalog", "build", "sphere", "--param", "R=-1", "--out", d],
        &["catalog", "build", "sphere", "--param", "radius=1", "--out", d],
        &["profile", "--source", d, "--out", d],
        &["mesh", "--out", d],
    ];
    for args in cases {
        let out = revolve(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
        assert!(!tmp.path().join("out").exists(), "{args:?} left artifacts");
    }
}

#[test]
fn numerical_failures_exit_3_and_leave_existing_files_alone() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("n");
    assert_eq!(code(&["prescribe", "--kind", "km", "--expr", "1/(x - 1.5)", "--domain", "1:2", "--out", path(&d)]), 3);
    assert!(!d.exists());

    ok(&["prescribe", "--kind", "kp", "--expr", "0.5/x", "--domain", "0.5:2", "--out", path(&d)]);
    let before = entries(&d);
    let out = revolve(&["profile", "--source", path(&d), "--tol-ode", "1e-30", "--out", path(&d)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("numerical failure"));
    assert_eq!(entries(&d), before);
}

#[test]
fn mesh_from_source_matches_mesh_from_profile() {
    let tmp = tempfile::tempdir().unwrap();
    let d = tmp.path().join("s");
    ok(&["catalog", "build", "sphere", "--param", "R=2", "--samples", "65", "--out", path(&d)]);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");
    ok(&["mesh", "--profile", path(&d), "--ntheta", "16", "--out", path(&a)]);
    ok(&["mesh", "--source", path(&d), "--samples", "65", "--ntheta", "16", "--out", path(&b)]);
    let obj = fs::read_to_string(a.join("mesh.obj")).unwrap();
    assert_eq!(obj, fs::read_to_string(b.join("mesh.obj")).unwrap());
    let vertices = obj.lines().filter(|l| l.starts_with("v ")).count();
    assert_eq!(vertices, 63 * 16 + 2);
}
