use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use skewbrace::catalog::BraceCatalog;
use skewbrace::group::cyclic;
use skewbrace::SkewBrace;

fn skewbrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skewbrace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn example_reports_right_chain() {
    let o = skewbrace(&["example", "c4c2-d8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let sizes: Vec<usize> = v["series"]["right_chain"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t.as_array().unwrap().len())
        .collect();
    assert_eq!(sizes, [8, 4, 2, 1]);
    assert_eq!(v["bound_check"]["verdict"]["verdict"], "pass");
    assert_eq!(v["brace"]["labels"][6], "2a+b");

    let o = skewbrace(&["example", "nonnilpotent-type", "--format", "json"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let right = v["series"]["right_chain"].as_array().unwrap();
    assert_eq!(right.last().unwrap(), &serde_json::json!([0, 1, 2]));
    assert_eq!(v["series"]["right_class"], Value::Null);
}

#[test]
fn text_mode_uses_labels() {
    let out = stdout(&skewbrace(&["example", "c4c2-d8"]));
    assert!(out.contains("B^(3) = {0, b} [2]"), "{out}");
    assert!(out.contains("Ker lambda = {0, b}"));
    let out = stdout(&skewbrace(&["example", "nonnilpotent-type"]));
    assert!(out.contains("B^(2) = {0, sigma, 2sigma} [3]"), "{out}");
    assert!(out.contains("B^(3) = B^(2), stable"));
    assert!(out.contains("Ker lambda = {0, tau}"));
}

#[test]
fn unknown_example_is_an_input_error() {
    let o = skewbrace(&["example", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("nonnilpotent-type") && err.contains("c4c2-d8"));
}

#[test]
fn enumerate_c2_has_one_entry() {
    let o = skewbrace(&["enumerate", "C2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 1);
    let v: Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["source"], "holomorph");
    assert_eq!(v["add_group"], "C2");
    assert_eq!(v["mul_group"], "C2");
}

#[test]
fn enumerate_without_dedup_lists_regular_subgroups() {
    let dedup = stdout(&skewbrace(&["enumerate", "C2xC2", "--format", "json"]));
    let all = stdout(&skewbrace(&[
        "enumerate",
        "C2xC2",
        "--no-dedup",
        "--format",
        "json",
    ]));
    assert_eq!(dedup.lines().count(), 2);
    assert!(all.lines().count() > dedup.lines().count());
}

#[test]
fn enumerate_respects_caps() {
    assert_eq!(skewbrace(&["enumerate", "C9"]).status.code(), Some(2));
    assert_eq!(
        skewbrace(&["enumerate", "C4", "--cap", "13"]).status.code(),
        Some(2)
    );
    assert_eq!(skewbrace(&["enumerate", "X7"]).status.code(), Some(2));
    assert_eq!(
        skewbrace(&["enumerate", "C4", "--cap", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_fixture_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "fixtures.jsonl",
        &BraceCatalog::fixtures().to_jsonl(),
    );
    let o = skewbrace(&["verify", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"]["not_applicable"], 1);
    assert_eq!(v["counts"]["pass"], 1);
    assert_eq!(v["counts"]["fail"], 0);
    let second = &v["verdicts"][1];
    assert_eq!(second["brace_id"], "c4c2-d8");
    assert_eq!(second["applicable"], true);
    assert_eq!(second["m"], 1);
    assert_eq!(second["r"], 1);
    assert_eq!(second["right_class"], 3);
    assert_eq!(second["bound"], 3);
    assert_eq!(second["pass"], true);
    assert_eq!(v["verdicts"][0]["applicable"], false);
}

#[test]
fn verify_empty_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "empty.jsonl", "");
    let o = skewbrace(&["verify", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdicts"], serde_json::json!([]));
    assert_eq!(v["counts"]["total"], 0);
}

#[test]
fn verify_reports_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let good = BraceCatalog::fixtures().to_jsonl();
    let path = write(
        dir.path(),
        "bad.jsonl",
        &format!("{good}{{\"id\": \"x\"}}\n"),
    );
    let o = skewbrace(&["verify", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 3"));

    let missing = dir.path().join("missing.jsonl");
    let o = skewbrace(&["verify", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn analyze_trivial_brace_file() {
    let dir = tempfile::tempdir().unwrap();
    let b = SkewBrace::trivial(&cyclic(3));
    let path = write(
        dir.path(),
        "trivial.json",
        &serde_json::to_string(&b).unwrap(),
    );
    let o = skewbrace(&["analyze", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["name"], "trivial");
    for key in ["left_class", "right_class", "central_class"] {
        assert_eq!(v["series"][key], 1, "{key}");
    }

    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"order":2,"add_table":[[0,1],[1,0]],"mul_table":[[0,1],[1,1]]}"#,
    );
    assert_eq!(skewbrace(&["analyze", &bad]).status.code(), Some(2));
}

#[test]
fn retract_flip_has_level_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "flip.json",
        r#"{"n":3,"lam":[[0,1,2],[0,1,2],[0,1,2]],"rho":[[0,1,2],[0,1,2],[0,1,2]]}"#,
    );
    let o = skewbrace(&["retract", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["multipermutation_level"], 1);
    assert_eq!(v["retraction_tower"], serde_json::json!([3, 1]));

    let not_solution = write(
        dir.path(),
        "bad.json",
        r#"{"n":3,"lam":[[0,1,2],[0,2,1],[0,1,2]],"rho":[[0,1,2],[0,1,2],[0,1,2]]}"#,
    );
    assert_eq!(
        skewbrace(&["retract", &not_solution]).status.code(),
        Some(2)
    );
}

#[test]
fn search_ranks_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(
        dir.path(),
        "fixtures.jsonl",
        &BraceCatalog::fixtures().to_jsonl(),
    );
    let o = skewbrace(&["search", &path, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["examined"], 2);
    assert_eq!(v["applicable"], 1);
    assert_eq!(v["ranking"][0]["id"], "c4c2-d8");
    assert_eq!(v["ranking"][0]["ratio"], 1.0);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("c2.jsonl");
    let o = skewbrace(&[
        "enumerate",
        "C2",
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 1);

    let nowhere = dir.path().join("no/such/dir/x.json");
    let o = skewbrace(&["example", "c4c2-d8", "--out", nowhere.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
