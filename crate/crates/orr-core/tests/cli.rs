//! End-to-end tests of the `orr` binary: output shapes, exit codes,
//! arc dumps, and batch behavior.

mod common;

use std::fs;

use common::*;
use serde_json::Value;

fn stderr_str(out: &std::process::Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn fixture_arg(rel: &str) -> String {
    fixture_path(rel).display().to_string()
}

#[test]
fn analyze_emits_verdict_json() {
    let out = orr_cmd(&["analyze", &fixture_arg("order_le16/c6.json")]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr_str(&out));
    let v: Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["group_name"], "C6");
    assert_eq!(v["order"], 6);
    assert_eq!(v["d"], 1);
    assert_eq!(v["answer"], "ORR");
    assert_eq!(v["solvable"], true);
    assert_eq!(v["generalized_dihedral"], false);
    assert_eq!(v["aut_order"], 6);
    let indices = v["connection_set"]["indices"].as_array().unwrap();
    assert!(!indices.is_empty());
    assert!(v["timings"]["construct_secs"].is_number());
}

#[test]
fn analyze_refusal_carries_reason() {
    let out = orr_cmd(&["analyze", &fixture_arg("order_le16/q8.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["answer"], "NO_ORR");
    assert_eq!(v["method"], "exception:q8");
    assert!(v["reason"].as_str().unwrap().contains("q8"));
    assert!(v.get("connection_set").is_none() || v["connection_set"].is_null());
}

#[test]
fn analyze_undecided_group_exits_2() {
    let out = orr_cmd(&["analyze", &fixture_arg("exceptions/c4xc2p4.json")]);
    assert_eq!(out.status.code(), Some(2), "stderr: {}", stderr_str(&out));
    let v: Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["answer"], "UNKNOWN");
    assert_eq!(v["method"], "oracle:sampled");
    let notes = v["annotations"].as_array().unwrap();
    assert!(notes.iter().any(|a| a.as_str().unwrap().contains("enumeration infeasible")));
    assert_eq!(v["oracle"]["exhaustive"], false);
}

#[test]
fn analyze_missing_file_exits_1() {
    let out = orr_cmd(&["analyze", "/no/such/group.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("error:"));
}

#[test]
fn analyze_writes_out_file_and_arc_dump() {
    let dir = tempfile::tempdir().unwrap();
    let verdict_path = dir.path().join("verdict.json");
    let arcs_path = dir.path().join("digraph.arcs");
    let out = orr_cmd(&[
        "analyze",
        &fixture_arg("order_le16/c6.json"),
        "--out",
        verdict_path.to_str().unwrap(),
        "--arcs",
        arcs_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).is_empty(), "verdict must go to the file");

    let v: Value = serde_json::from_str(&fs::read_to_string(&verdict_path).unwrap()).unwrap();
    assert_eq!(v["answer"], "ORR");
    let set: Vec<u16> = v["connection_set"]["indices"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as u16)
        .collect();

    let (_, g) = load_fixture("order_le16/c6.json");
    let text = fs::read_to_string(&arcs_path).unwrap();
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    assert_eq!(header, format!("6 {}", 6 * set.len()));
    let mut arcs = 0;
    for line in lines {
        let mut it = line.split_whitespace();
        let u: u16 = it.next().unwrap().parse().unwrap();
        let v: u16 = it.next().unwrap().parse().unwrap();
        assert!(it.next().is_none());
        let ratio = g.mul(v, g.inv(u));
        assert!(set.contains(&ratio), "arc {u} -> {v} not labeled by the set");
        arcs += 1;
    }
    assert_eq!(arcs, 6 * set.len());
}

#[test]
fn verify_prints_the_four_report_lines() {
    let out = orr_cmd(&[
        "verify",
        &fixture_arg("order_le16/q8.json"),
        "--set",
        "1,2,3",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_str(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines,
        vec![
            "oriented: true",
            "generates: true",
            "stabilizer_order: 3",
            "orr: false",
        ]
    );
}

#[test]
fn verify_rejects_bad_sets() {
    let identity = orr_cmd(&[
        "verify",
        &fixture_arg("order_le16/q8.json"),
        "--set",
        "0,1",
    ]);
    assert_eq!(identity.status.code(), Some(1));
    assert!(stderr_str(&identity).contains("error:"));

    let garbage = orr_cmd(&[
        "verify",
        &fixture_arg("order_le16/q8.json"),
        "--set",
        "1,foo",
    ]);
    assert_eq!(garbage.status.code(), Some(1));
    assert!(stderr_str(&garbage).contains("bad element index"));

    let out_of_range = orr_cmd(&[
        "verify",
        &fixture_arg("order_le16/q8.json"),
        "--set",
        "99",
    ]);
    assert_eq!(out_of_range.status.code(), Some(1));
    assert!(stderr_str(&out_of_range).contains("out of range"));
}

#[test]
fn brute_finds_the_first_full_support_set() {
    let out = orr_cmd(&["brute", &fixture_arg("order_le16/c5.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout_str(&out)).unwrap();
    assert_eq!(v["group_name"], "C5");
    assert_eq!(v["answer"], "FOUND");
    assert_eq!(v["set"], serde_json::json!([1, 2]));
    assert_eq!(v["transcript"]["exhaustive"], true);
}

#[test]
fn batch_reports_every_file_in_name_order() {
    let dir = tempfile::tempdir().unwrap();
    for rel in ["order_le16/c3xc3.json", "order_le16/c6.json"] {
        let from = fixture_path(rel);
        fs::copy(&from, dir.path().join(from.file_name().unwrap())).unwrap();
    }
    fs::write(dir.path().join("broken.json"), "{ not json").unwrap();

    let out = orr_cmd(&["batch", dir.path().to_str().unwrap(), "--jobs", "2"]);
    assert_eq!(out.status.code(), Some(1), "an unreadable file must fail the batch");
    let text = stdout_str(&out);
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0]["file"], "broken.json");
    assert!(lines[0]["error"].as_str().is_some());
    assert_eq!(lines[1]["file"], "c3xc3.json");
    assert_eq!(lines[1]["verdict"]["answer"], "NO_ORR");
    assert_eq!(lines[2]["file"], "c6.json");
    assert_eq!(lines[2]["verdict"]["answer"], "ORR");
}

#[test]
fn batch_writes_jsonl_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let from = fixture_path("order_le16/c3.json");
    fs::copy(&from, dir.path().join("c3.json")).unwrap();
    let out_path = dir.path().join("verdicts.jsonl");

    let out = orr_cmd(&[
        "batch",
        dir.path().to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout_str(&out).is_empty());
    let text = fs::read_to_string(&out_path).unwrap();
    let lines: Vec<Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["file"], "c3.json");
    assert_eq!(lines[0]["verdict"]["answer"], "ORR");
}

#[test]
fn batch_requires_group_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = orr_cmd(&["batch", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr_str(&out).contains("no .json group files"));
}
