use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_feqlab"))
        .args(args)
        .output()
        .unwrap()
}

fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["fixtures", "--out", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    dir
}

fn p(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    std::fs::write(dir.path().join(name), text).unwrap();
    p(dir, name)
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn fixtures_written() {
    let dir = fixtures();
    for name in ["c4.json", "c4_negation.json", "c4_mu.json", "c4_upsilon.json", "s3.json", "null2.json"] {
        assert!(Path::new(&p(&dir, name)).exists(), "{name}");
    }
}

#[test]
fn solve_c4_sine() {
    let d = fixtures();
    let out = run(&[
        "solve", "--eq", "vanvleck", "--sg", &p(&d, "c4.json"),
        "--sigma", &p(&d, "c4_negation.json"), "--mu", &p(&d, "c4_mu.json"),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    let sols = r["solutions"].as_array().unwrap();
    assert_eq!(sols.len(), 1);
    assert_eq!(sols[0]["values"][1][0].as_f64(), Some(1.0));
    assert_eq!(sols[0]["values"][3][0].as_f64(), Some(-1.0));
}

#[test]
fn verify_sine_with_battery() {
    let d = fixtures();
    let args = |f: &str| {
        run(&[
            "verify", "--eq", "vanvleck", "--battery", "--sg", &p(&d, "c4.json"),
            "--sigma", &p(&d, "c4_negation.json"), "--mu", &p(&d, "c4_mu.json"), "--f", &p(&d, f),
        ])
    };
    let ok = args("c4_sine.json");
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(report(&ok)["max_abs"].as_f64(), Some(0.0));
    assert!(report(&ok)["per_item"].as_array().unwrap().len() >= 8);

    let bad = args("c4_cosine.json");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn table_format() {
    let d = fixtures();
    let out = run(&["analyze", "--sg", &p(&d, "c4.json"), "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("character_count") && l.ends_with('4')));
}

#[test]
fn analyze_s3() {
    let d = fixtures();
    let r = report(&run(&["analyze", "--sg", &p(&d, "s3.json")]));
    assert_eq!(r["n"], 6);
    assert_eq!(r["center"], serde_json::json!([0]));
    assert_eq!(r["character_count"], 2);
    assert_eq!(r["commutative"], false);
}

#[test]
fn non_central_measure_is_hypothesis_failure() {
    let d = fixtures();
    let mu = write(&d, "mu.json", r#"{"atoms": [{"point": 3, "w": [1, 0]}]}"#);
    let out = run(&[
        "solve", "--eq", "vanvleck", "--sg", &p(&d, "s3.json"),
        "--sigma", &p(&d, "s3_inversion.json"), "--mu", &mu,
    ]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn non_associative_table() {
    let d = fixtures();
    let sg = write(&d, "bad.json", r#"{"n": 2, "table": [[1, 0], [0, 0]]}"#);
    let out = run(&["validate", "--sg", &sg]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["triple"], serde_json::json!([0, 0, 1]));
}

#[test]
fn parse_errors_and_missing_files() {
    let d = fixtures();
    let sg = write(&d, "garbage.json", "{not json");
    assert_eq!(run(&["validate", "--sg", &sg]).status.code(), Some(3));
    let missing = p(&d, "absent.json");
    assert_eq!(run(&["analyze", "--sg", &missing]).status.code(), Some(3));
}

#[test]
fn usage_errors() {
    let d = fixtures();
    assert_eq!(run(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(run(&["solve", "--sg", &p(&d, "c4.json")]).status.code(), Some(64));
    assert_eq!(run(&["solve", "--eq", "nonsense"]).status.code(), Some(64));
    let zero = run(&[
        "stability", "--sg", &p(&d, "c4.json"), "--sigma", &p(&d, "c4_negation.json"),
        "--mu", &p(&d, "c4_mu.json"), "--trials", "0",
    ]);
    assert_eq!(zero.status.code(), Some(64));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn stability_is_reproducible() {
    let d = fixtures();
    let args = [
        "stability", "--sg", &p(&d, "c4.json"), "--sigma", &p(&d, "c4_negation.json"),
        "--mu", &p(&d, "c4_mu.json"), "--trials", "50", "--seed", "7",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(report(&a)["violations"], 0);
}

#[test]
fn oracle_matches_closed_form() {
    let d = fixtures();
    let out = run(&[
        "oracle", "--eq", "vanvleck", "--sg", &p(&d, "c4.json"),
        "--sigma", &p(&d, "c4_negation.json"), "--mu", &p(&d, "c4_mu.json"), "--starts", "40",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["coincide"], true);
}

#[test]
fn spherical_and_corollary_forms() {
    let d = fixtures();
    let solve = |eq: &str| {
        report(&run(&[
            "solve", "--eq", eq, "--sg", &p(&d, "c4.json"),
            "--sigma", &p(&d, "c4_negation.json"), "--mu", &p(&d, "c4_upsilon.json"),
        ]))
    };
    assert_eq!(solve("spherical")["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(solve("corollary33")["solutions"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_small_constant_fails() {
    let d = fixtures();
    let f = write(&d, "f.json", r#"{"values": [[0.1, 0], [0.1, 0], [0.1, 0], [0.1, 0]]}"#);
    let out = run(&[
        "verify", "--eq", "vanvleck", "--sg", &p(&d, "c4.json"),
        "--sigma", &p(&d, "c4_negation.json"), "--mu", &p(&d, "c4_mu.json"), "--f", &f,
    ]);
    assert_eq!(out.status.code(), Some(1));
    let max_abs = report(&out)["max_abs"].as_f64().unwrap();
    assert!((max_abs - 0.02).abs() < 1e-12, "{max_abs}");
}
