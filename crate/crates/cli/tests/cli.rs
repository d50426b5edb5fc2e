use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_conelab"))
}

fn path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(rel)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).current_dir(path("")).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(path(&format!("golden/{name}"))).unwrap()
}

#[test]
fn rank_of_orthant() {
    let out = run(&["rank", "--input", "data/orthant4.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out), serde_json::json!({"beta": 4, "n": 4, "pairs": 12}));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("rank_orthant4.json"));
}

#[test]
fn decompose_irreducible_cone() {
    let out = run(&["decompose", "--input", "data/qpn4_3.json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["irreducible"], true);
    assert_eq!(v["orthant_form"], Value::Null);
    assert_eq!(v["components"][0]["rays"].as_array().unwrap().len(), 8);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("decompose_qpn4_3.json"));
}

#[test]
fn decompose_reports_orthant_form() {
    let doc = String::from_utf8(run(&["catalog", "--kind", "qpn", "--n", "4", "--p", "2"]).stdout).unwrap();
    let out = run_stdin(&["decompose", "--input", "-"], &doc);
    let v = json(&out);
    assert_eq!(v["irreducible"], false);
    assert_eq!(v["orthant_form"], serde_json::json!({"a": "-2", "b": "1"}));
}

#[test]
fn extreme_and_catalog_goldens() {
    let out = run(&["extreme", "--input", "data/qpn4_3.json"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("extreme_qpn4_3.json"));
    let out = run(&["catalog", "--kind", "qpn", "--n", "3", "--p", "2"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("catalog_qpn3_2.json"));
}

#[test]
fn catalog_documents_round_trip() {
    let cases: &[&[&str]] = &[
        &["catalog", "--kind", "orthant", "--n", "3"],
        &["catalog", "--kind", "ab", "--n", "3", "--a", "2", "--b", "-1/2"],
        &["catalog", "--kind", "random-simplicial", "--n", "3", "--seed", "5"],
        &["catalog", "--kind", "orbit", "--seeds", "data/seeds.json"],
        &["catalog", "--kind", "direct-sum", "--input", "data/orthant4.json", "--with", "data/qpn4_3.json"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let doc = String::from_utf8(out.stdout).unwrap();
        let again = run_stdin(&["dual", "--input", "-"], &doc);
        assert_eq!(again.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn dual_of_dual_is_the_original() {
    let d = run(&["dual", "--input", "data/qpn4_3.json"]);
    let dd = run_stdin(&["dual", "--input", "-"], &String::from_utf8(d.stdout).unwrap());
    let v = json(&dd);
    let original: Value = serde_json::from_str(&std::fs::read_to_string(path("data/qpn4_3.json")).unwrap()).unwrap();
    assert_eq!(v["generators"], original["generators"]);
    assert_eq!(v["inequalities"], original["inequalities"]);
}

#[test]
fn ll_basis_has_beta_matrices() {
    let v = json(&run(&["ll-basis", "--input", "data/orthant4.json"]));
    assert_eq!(v["beta"], 4);
    assert_eq!(v["basis"].as_array().unwrap().len(), 4);
    assert_eq!(v["basis"][0][0][0], "1");
}

#[test]
fn check_perm_on_seeds_and_documents() {
    let v = json(&run(&["check-perm", "--seeds", "data/seeds.json"]));
    assert_eq!(v["permutation_invariant"], true);
    assert_eq!(v["ones_axis"], "plus_one");
    let doc = r#"{"dim": 2, "generators": [["1", "0"], ["1", "1"]]}"#;
    let v = json(&run_stdin(&["check-perm", "--input", "-"], doc));
    assert_eq!(v["permutation_invariant"], false);
}

#[test]
fn malformed_input_exits_2() {
    for args in [
        vec!["dual", "--input", "data/zero_dim.json"],
        vec!["rank", "--input", "data/missing.json"],
        vec!["catalog", "--kind", "qpn", "--n", "3"],
        vec!["catalog", "--kind", "ab", "--n", "3", "--a", "1", "--b", "1"],
        vec!["catalog", "--kind", "ab", "--n", "3", "--a", "x", "--b", "1"],
        vec!["verify-theorems", "--n-range", "5..2"],
        vec!["spectral-verify", "--m", "3", "--a", "1", "--b", "1"],
        vec!["frobnicate"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
    let out = run_stdin(&["rank", "--input", "-"], r#"{"dim": 2, "generators": [["1", "0"], ["-1", "0"]]}"#);
    assert_eq!(out.status.code(), Some(2));
    let out = run_stdin(&["rank", "--input", "-"], "not json");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let cases: &[&[&str]] = &[
        &["verify-theorems", "--n-range", "2..3", "--samples", "30", "--seed", "4"],
        &["spectral-verify", "--m", "4", "--a", "-2", "--b", "1", "--samples", "200", "--seed", "9"],
        &["catalog", "--kind", "random-simplicial", "--n", "4", "--seed", "3"],
    ];
    for args in cases {
        let first = run(args);
        let second = bin().args(*args).env("CONELAB_THREADS", "1").output().unwrap();
        assert_eq!(first.status.code(), Some(0), "{args:?}");
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn verify_theorems_reports_a_table() {
    let out = run(&["verify-theorems", "--n-range", "2..4", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    let verdicts = v["verdicts"].as_array().unwrap();
    assert!(verdicts.iter().any(|r| r["check"] == "qpn2_orthant_form"));
    assert!(verdicts.iter().all(|r| r["pass"] == true));
}

#[test]
fn spectral_verify_reports_counts() {
    let v = json(&run(&["spectral-verify", "--m", "3", "--a", "-1", "--b", "1", "--samples", "100"]));
    assert_eq!(v["samples"], 100);
    assert_eq!(v["forward_pass"], 100);
    assert_eq!(v["backward_pass"], 100);
}

#[test]
fn bad_thread_count_exits_2() {
    let out = bin()
        .args(["rank", "--input", "data/orthant4.json"])
        .current_dir(path(""))
        .env("CONELAB_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
