use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hmn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hmn"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn fact<'a>(report: &'a Value, name: &str) -> &'a Value {
    report["facts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|f| f["name"] == name)
        .map(|f| &f["value"])
        .unwrap_or_else(|| panic!("no fact {name}"))
}

#[test]
fn gen_writes_the_expected_corpus_sizes() {
    for (n, count) in [(1, 1), (4, 24)] {
        let dir = tempfile::tempdir().unwrap();
        let out = hmn(&[
            "gen",
            "--max-points",
            &n.to_string(),
            "--out",
            dir.path().to_str().unwrap(),
            "--json",
        ]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(fact(&json(&out), "entries"), count);
        let index: Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("index.json")).unwrap())
                .unwrap();
        assert_eq!(index["entries"].as_array().unwrap().len(), count);
        let dots = std::fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| {
                e.as_ref()
                    .unwrap()
                    .path()
                    .extension()
                    .is_some_and(|x| x == "dot")
            })
            .count();
        assert_eq!(dots, count);
    }
}

#[test]
fn analyze_l5() {
    let out = hmn(&["analyze", &data("l5.json"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(fact(&r, "size"), 5);
    assert_eq!(fact(&r, "center"), &serde_json::json!(["0", "1"]));
    assert_eq!(fact(&r, "y"), &serde_json::json!(["a", "b"]));
    assert_eq!(fact(&r, "centrally_supplemented"), false);
}

#[test]
fn complete_l5_writes_both_algebras() {
    let dir = tempfile::tempdir().unwrap();
    let out = hmn(&[
        "complete",
        &data("l5.json"),
        "--out",
        dir.path().to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(fact(&r, "s_size"), 9);
    assert_eq!(fact(&r, "plus_size"), 9);
    for f in [
        "l5-S.json",
        "l5-S.dot",
        "l5-plus.json",
        "l5-plus.dot",
        "report.json",
    ] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    // the written S(A) loads back as a 9-element lattice
    let back = hmn(&[
        "analyze",
        dir.path().join("l5-S.json").to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(fact(&json(&back), "size"), 9);
}

#[test]
fn bd2_passes_on_l5_and_fails_on_c4() {
    let out = hmn(&["check", "bd2", &data("l5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let out = hmn(&["check", &data("c4.json"), "--eq", "bd2", "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    let fail = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["status"] == "fail")
        .unwrap();
    assert_eq!(
        fail["witness"],
        serde_json::json!([["x1", "p"], ["x2", "q"]])
    );
}

#[test]
fn check_accepts_an_expression_and_a_corpus_directory() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    assert_eq!(
        hmn(&["gen", "--max-points", "3", "--out", d]).status.code(),
        Some(0)
    );
    let out = hmn(&["check", "x ^ x* = 0", d]);
    assert_eq!(out.status.code(), Some(0));
    let out = hmn(&["check", "x v x* = 1", d]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn suite_passes_and_injected_faults_fail() {
    let out = hmn(&["suite", "--max-points", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["summary"]["fail"], 0);
    for fault in ["implies", "pentagon", "frame"] {
        let out = hmn(&["suite", "--max-points", "2", "--inject-fault", fault]);
        assert_eq!(out.status.code(), Some(1), "{fault}");
    }
}

#[test]
fn resource_limit_exits_3() {
    let out = hmn(&["complete", &data("l5.json"), "--max-carrier", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn bad_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"poset\"}").unwrap();
    assert_eq!(
        hmn(&["analyze", bad.to_str().unwrap()]).status.code(),
        Some(2)
    );
    assert_eq!(hmn(&["analyze", &data("n5.json")]).status.code(), Some(2));
    assert_eq!(
        hmn(&["analyze", "/no/such/file.json"]).status.code(),
        Some(2)
    );
    assert_eq!(
        hmn(&["check", "x v = y", &data("l5.json")]).status.code(),
        Some(2)
    );
    assert_eq!(hmn(&["frobnicate"]).status.code(), Some(2));
}
