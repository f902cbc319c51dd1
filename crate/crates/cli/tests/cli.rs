use std::collections::BTreeSet;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_helicoid")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn keys(v: &Value) -> BTreeSet<String> {
    v.as_object().unwrap().keys().cloned().collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn sample(args: &[&str]) -> Value {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(keys(&doc), set(&["axis", "curve", "W", "H1", "K1", "samples"]));
    let s = doc["samples"][0].clone();
    assert_eq!(keys(&s), set(&["s", "t", "H", "K", "epsilon"]));
    s
}

#[test]
fn hyperbolic_cylinder_curvature() {
    let args = ["curvature", "--axis", "spacelike", "--curve", "circle:+", "--r", "2", "--lambda", "0", "--mu", "0"];
    let s = sample(&[&args[..], &["--h", "1", "--sample", "0.3,0.7"]].concat());
    assert!((s["H"].as_f64().unwrap().abs() - 0.25).abs() < 1e-9);
    assert!(s["K"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn timelike_ruled_curvature() {
    let s = sample(&["curvature", "--axis", "timelike", "--curve", "poly:1,1", "--h", "2", "--sample", "1,0"]);
    assert!((s["H"].as_f64().unwrap().abs() - 0.5).abs() < 1e-9);
}

#[test]
fn cayley_curvature() {
    let s = sample(&["curvature", "--axis", "lightlike", "--curve", "poly:5", "--h", "1", "--sample", "1,1"]);
    assert!(s["H"].as_f64().unwrap().abs() < 1e-9);
}

#[test]
fn json_keys_are_sorted_and_numbers_rounded() {
    let o = run(&["curvature", "--axis", "timelike", "--curve", "poly:0,0,1/3", "--sample", "0.7,0.1"]);
    let text = stdout(&o);
    let positions: Vec<usize> = ["\"H1\"", "\"K1\"", "\"W\"", "\"axis\"", "\"curve\"", "\"samples\""]
        .iter()
        .map(|k| text.find(k).unwrap())
        .collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    let doc: Value = serde_json::from_str(&text).unwrap();
    for key in ["H", "K"] {
        let digits: String = doc["samples"][0][key].to_string().chars().filter(|c| c.is_ascii_digit()).collect();
        assert!(digits.trim_start_matches('0').len() <= 12, "{digits}");
    }
}

#[test]
fn exit_codes() {
    let bad_spec = run(&["curvature", "--axis", "lightlike", "--curve", "circle:+", "--r", "1"]);
    assert_eq!(bad_spec.status.code(), Some(2));
    let bad_number = run(&["curvature", "--axis", "timelike", "--curve", "poly:1,x"]);
    assert_eq!(bad_number.status.code(), Some(2));
    let unknown_flag = run(&["curvature", "--axis", "timelike", "--curve", "poly:1", "--bogus", "1"]);
    assert_eq!(unknown_flag.status.code(), Some(2));
    let degenerate = run(&["curvature", "--axis", "timelike", "--curve", "poly:0", "--sample", "1,0"]);
    assert_eq!(degenerate.status.code(), Some(3));
    let low_degree = run(&["verify", "t1", "--max-degree", "1"]);
    assert_eq!(low_degree.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("missing").join("x.obj");
    let unwritable = run(&["mesh", "--surface", "cayley", "--output", path.to_str().unwrap()]);
    assert_eq!(unwritable.status.code(), Some(5));
}

#[test]
fn verify_reports() {
    let o = run(&["verify", "t1", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("degree 17: coeff = -216*a6^3 ≠ 0 given {a6 ≠ 0}"), "{text}");
    let o = run(&["verify", "t2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("family: H^2 = 1/(4*r^2), lambda = 0, mu = 0"));
    let o = run(&["verify", "t3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["theorem"], "t3");
    assert_eq!(doc["sections"].as_array().unwrap().len(), 6);
}

#[test]
fn catalog_passes() {
    let o = run(&["catalog"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS ")).count(), 10);
    assert!(!text.contains("FAIL"));
}

#[test]
fn lightlike_orbit_csv() {
    let o = run(&["orbit", "--axis", "lightlike", "--point", "1,0,3", "--steps", "5"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x,y,z"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|x| x.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 5);
    for r in rows {
        assert!((r[1] - r[3] + 2.0).abs() < 1e-12);
    }
}

#[test]
fn cayley_mesh_obj() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cayley.obj");
    let o = run(&["mesh", "--surface", "cayley", "--n", "10", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 100);
    let faces: Vec<&str> = text.lines().filter(|l| l.starts_with("f ")).collect();
    assert_eq!(faces.len(), 162);
    assert_eq!(faces[0], "f 1 11 12");
}

#[test]
fn mesh_from_descriptor() {
    let o = run(&["mesh", "--axis", "spacelike", "--curve", "circle:-", "--r", "1", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("v ")).count(), 9);
}
