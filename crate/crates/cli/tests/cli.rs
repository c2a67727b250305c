use std::path::Path;
use std::process::{Command, Output};

use planar_bisect::instance::{canonicalize, read_instance};
use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_planar-bisect"))
        .args(args)
        .output()
        .unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = bin(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn gen(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name);
    let p = path.to_str().unwrap();
    let mut all = vec!["gen", "--out", p];
    all.extend_from_slice(args);
    ok(&all);
    p.to_string()
}

#[test]
fn gen_is_deterministic_and_canonical() {
    let args = [
        "gen",
        "--family",
        "annulus",
        "--rings",
        "2",
        "--spokes",
        "5",
        "--max-weight",
        "4",
        "--seed",
        "7",
    ];
    let a = ok(&args);
    assert_eq!(a, ok(&args));
    assert_ne!(
        a,
        ok(&[
            "gen",
            "--family",
            "annulus",
            "--rings",
            "2",
            "--spokes",
            "5",
            "--max-weight",
            "4"
        ])
    );
    assert_eq!(canonicalize(&a).unwrap(), a);
}

#[test]
fn every_family_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for family in ["grid", "annulus", "triangulation", "nested"] {
        let p = gen(
            dir.path(),
            family,
            &["--family", family, "--max-cost", "5", "--seed", "3"],
        );
        let text = std::fs::read_to_string(&p).unwrap();
        let g = read_instance(Path::new(&p)).unwrap();
        assert!(g.num_vertices() > 0);
        assert_eq!(canonicalize(&text).unwrap(), text, "{family}");
    }
}

#[test]
fn solve_writes_a_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(
        dir.path(),
        "g.json",
        &["--family", "grid", "--rows", "3", "--cols", "4"],
    );
    let report = dir.path().join("report.json");
    let out = ok(&[
        "solve",
        "--input",
        &p,
        "--b",
        "1/2",
        "--epsilon",
        "0.1",
        "--report",
        report.to_str().unwrap(),
    ]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert!(!v["runs"].as_array().unwrap().is_empty());
    assert!(v["solution"]["cost"].is_string());
    assert!(out.is_empty());

    let out = ok(&[
        "solve",
        "--input",
        &p,
        "--b",
        "1/2",
        "--epsilon",
        "1/10",
        "--stage",
        "spanner",
    ]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v["solution"].is_null());
}

#[test]
fn exact_reports_the_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(
        dir.path(),
        "g.json",
        &["--family", "grid", "--rows", "2", "--cols", "2"],
    );
    let v: Value = serde_json::from_str(&ok(&["exact", "--input", &p, "--b", "1/2"])).unwrap();
    assert_eq!(v["solution"]["cost"], "2");
    assert_eq!(v["solution"]["weight_u"], 2);
}

#[test]
fn cycles_table_lists_weights() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(
        dir.path(),
        "g.json",
        &["--family", "grid", "--rows", "2", "--cols", "3"],
    );
    let out = ok(&["cycles", "table", "--input", &p, "--root", "0"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(!v["rows"].as_array().unwrap().is_empty());
}

#[test]
fn verify_passes_then_rejects_a_bad_rotation() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(
        dir.path(),
        "g.json",
        &["--family", "grid", "--rows", "2", "--cols", "3", "--max-cost", "3"],
    );
    let v: Value = serde_json::from_str(&ok(&["verify", "--input", &p, "--epsilon", "1/2"])).unwrap();
    assert_eq!(v["passed"], true);

    let mut inst: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    let rot = inst["rotation"]["0"].as_array_mut().unwrap();
    rot.push(rot[0].clone());
    std::fs::write(&p, serde_json::to_string(&inst).unwrap()).unwrap();
    let out = bin(&["verify", "--input", &p, "--epsilon", "1/2"]);
    assert!(!out.status.success());
    assert!(!out.stderr.is_empty());
}

#[test]
fn cluster_needs_a_region_with_holes() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(
        dir.path(),
        "g.json",
        &["--family", "grid", "--rows", "2", "--cols", "2"],
    );
    let out = bin(&[
        "cluster",
        "--input",
        &p,
        "--lambda",
        "1/100",
        "--epsilon",
        "1/2",
        "--region",
        "0",
    ]);
    assert!(!out.status.success());
}

#[test]
fn bad_arguments_fail() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen(dir.path(), "g.json", &["--family", "grid"]);
    assert!(!bin(&["solve", "--input", &p, "--b", "3/2", "--epsilon", "1/2"])
        .status
        .success());
    assert!(!bin(&["solve", "--input", &p, "--b", "x", "--epsilon", "1/2"])
        .status
        .success());
    assert!(!bin(&[
        "solve",
        "--input",
        "/nonexistent.json",
        "--b",
        "1/2",
        "--epsilon",
        "1/2"
    ])
    .status
    .success());
}
