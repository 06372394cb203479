use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_normevs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

#[test]
fn compare_equivalent_in_rn() {
    let out = run(&["compare", "p(1)", "sup", "--dim", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["equivalent"], true);
    assert!((v["psi"].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    let sandwich = v["sandwich"].as_array().unwrap();
    assert!((sandwich[0].as_f64().unwrap() - 1.0 / 3.0).abs() < 1e-12);
    assert!((sandwich[1].as_f64().unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn compare_not_equivalent_in_c00() {
    let out = run(&["compare", "p(1)", "sup", "--space", "c00"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["equivalent"], false);
    assert_eq!(v["witness_family"]["id"], "c00_sup_vs_one");
}

#[test]
fn compare_scaled_copy() {
    let out = run(&["compare", "sum(p(3), sup)", "scale(7, sum(p(3), sup))", "--dim", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["psi"].as_f64(), Some(1.0 / 7.0));
}

#[test]
fn text_format() {
    let out = run(&["compare", "p(1)", "sup", "--dim", "3", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict    equivalent"), "{text}");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(run(&["compare", "p(0.5)", "sup"]).status.code(), Some(64));
    assert_eq!(run(&["bogus"]).status.code(), Some(64));
    assert_eq!(run(&["compare", "p(1)"]).status.code(), Some(64));
    assert_eq!(run(&["witness", "p_vs_q", "-p", "2", "-q", "3"]).status.code(), Some(64));
}

#[test]
fn witness_lines() {
    let out = run(&["witness", "c00_sup_vs_one", "-N", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let lines: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[2]["vector"], "{1:1, 2:2, 3:3}");
    assert_eq!(lines[2]["ratio"].as_f64(), Some(0.5));
}

#[test]
fn check_axioms_exit_status() {
    for instance in ["norms", "hyperspace", "cone"] {
        let out = run(&["check-axioms", instance, "--seed", "3"]);
        assert_eq!(out.status.code(), Some(0), "{instance}");
        let v = json(&out);
        for a in ["A1", "A2", "A3", "A4", "A5", "A6"] {
            assert_eq!(v["axioms"][a]["status"], "pass", "{instance} {a}");
        }
    }
    assert_eq!(run(&["check-axioms", "nope"]).status.code(), Some(64));
}

#[test]
fn family_scan_certifies_all_pairs() {
    let out = run(&["family-scan", "1", "1.5", "2", "3", "inf"]);
    assert_eq!(out.status.code(), Some(0));
    let pairs = json(&out)["pairs"].as_array().unwrap().clone();
    assert_eq!(pairs.len(), 10);
    assert!(pairs.iter().all(|p| p["status"] == "nonequivalent_certified"));
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("normevs-cli-test-{}.json", std::process::id()));
    let out = run(&["compare", "p(2)", "p(2)", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(written["psi"].as_f64(), Some(1.0));
}
