use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catalan-atlas")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn stats_csv_matches_the_f4_row() {
    let out = run(&["stats", "--type", "F4", "--m", "1", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "i,value,source");
    assert_eq!(&rows[1..5], ["0,1,chains", "1,20,chains", "2,35,chains", "3,10,chains"]);
}

#[test]
fn verify_a2_m2() {
    let v = json(&["verify", "--type", "A2", "--m", "2", "--format", "json"]);
    assert_eq!(v["meta"]["type"], "A2");
    assert_eq!(v["meta"]["m"], 2);
    assert!(v["meta"]["version"].is_string());
    let data = &v["data"];
    assert_eq!(data["N_plus"], 7);
    assert_eq!(data["h_plus"], serde_json::json!([1, 4, 2]));
    assert_eq!(data["f_plus"], serde_json::json!([1, 6, 7]));
    let checks = data["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["status"] != "fail"));
}

#[test]
fn one_positive_chain_in_rank_one() {
    let v = json(&["chains", "--type", "A1", "--m", "1", "--positive"]);
    assert_eq!(v["data"]["chains"].as_array().unwrap().len(), 1);
}

#[test]
fn listings_agree_with_stats() {
    let stats = json(&["stats", "--type", "B3", "--m", "2"]);
    let n_plus = stats["data"]["N_plus"].as_u64().unwrap();
    let n = stats["data"]["N"].as_u64().unwrap();
    assert_eq!(json(&["chains", "--type", "B3", "--m", "2", "--positive"])["data"]["count"], n_plus);
    assert_eq!(json(&["regions", "--type", "B3", "--m", "2", "--positive"])["data"]["count"], n_plus);
    assert_eq!(json(&["lattice", "--type", "B3", "--m", "2"])["data"]["count"], n_plus);
    assert_eq!(json(&["chains", "--type", "B3", "--m", "2"])["data"]["count"], n);
    assert_eq!(json(&["regions", "--type", "B3", "--m", "2"])["data"]["count"], n);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["regions", "--type", "G2", "--m", "2", "--positive"][..],
        &["figure", "--type", "B2", "--m", "2"],
        &["verify", "--type", "A3", "--m", "1", "--format", "csv"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout);
    }
}

#[test]
fn writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("catalan-atlas-{}.json", std::process::id()));
    let out = run(&["roots", "--type", "C3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["data"]["positive_roots"].as_array().unwrap().len(), 9);
    assert_eq!(v["data"]["coxeter_number"], 6);
}

#[test]
fn cluster_counts() {
    let v = json(&["cluster", "--type", "A2", "--m", "2", "--positive"]);
    assert_eq!(v["data"]["f"], serde_json::json!([1, 6, 7]));
    let stats = json(&["stats", "--type", "C3", "--m", "1"]);
    let full = json(&["cluster", "--type", "C3", "--m", "1"]);
    assert_eq!(full["data"]["f"], stats["data"]["f"]);
    assert_eq!(full["data"]["h"], stats["data"]["h"]);
}

#[test]
fn usage_errors_exit_one() {
    for args in [
        &["stats", "--type", "Q3"][..],
        &["stats", "--type", "A2", "--m", "0"],
        &["figure", "--type", "A3"],
        &["figure", "--type", "A2", "--format", "json"],
        &["stats", "--type", "A2", "--format", "svg"],
        &["cluster", "--type", "E6"],
        &["stats"],
        &["bogus"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn work_guard_is_reported() {
    let out = Command::new(env!("CARGO_BIN_EXE_catalan-atlas"))
        .args(["chains", "--type", "A3", "--m", "2"])
        .env("CATALAN_ATLAS_MAX_WORK", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("5"));
}
