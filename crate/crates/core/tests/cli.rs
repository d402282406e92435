use std::path::Path;
use std::process::{Command, Output};

use ordturan::cli::density::read_density_csv;
use ordturan::OrderedHypergraph;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordturan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_transversal_then_verify_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--out-dir", path(dir.path()), "construct", "transversal", "--n", "6", "--r", "3", "--s", "5"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["hypergraph"]["edges"].as_array().unwrap().len(), 2);
    assert_eq!(v["certificate"]["verified"], true);

    let saved = std::fs::read_to_string(dir.path().join("construct-transversal-n6-r3-s5.json")).unwrap();
    let text = serde_json::to_string(&serde_json::from_str::<Value>(&saved).unwrap()["hypergraph"]).unwrap();
    let g = OrderedHypergraph::from_json(r#"{"n":6,"r":3,"edges":[[1,2,3],[4,5,6]]}"#).unwrap();
    assert_eq!(OrderedHypergraph::from_json(&text).unwrap(), g);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with(&format!("{{\"hypergraph\":{}", g.to_json())));

    let file = dir.path().join("g.json");
    std::fs::write(&file, g.to_json()).unwrap();
    let checked = run(&["verify", "transversal", "--input", path(&file), "--r", "3", "--s", "5"]);
    assert!(checked.status.success());
    assert_eq!(stdout_json(&checked)["verified"], true);

    // one edge alone misses the copy on {1,2,4,5,6}
    std::fs::write(&file, r#"{"n":6,"r":3,"edges":[[1,2,3]]}"#).unwrap();
    let missed = run(&["verify", "transversal", "--input", path(&file), "--r", "3", "--s", "5"]);
    assert_eq!(missed.status.code(), Some(1));
    assert_eq!(stdout_json(&missed)["counterexample"], serde_json::json!([1, 2, 4, 5, 6]));
}

#[test]
fn exact_f_example_and_witness_check() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--out-dir", path(dir.path()), "exact", "f", "--n", "4", "--k", "2"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["value"], 3);
    assert_eq!(v["status"], "optimal");
    let saved = dir.path().join("exact-f-n4-k2.json");
    let checked = run(&["verify", "exact", "--input", path(&saved)]);
    assert!(checked.status.success());
    assert_eq!(stdout_json(&checked)["verified"], true);
}

#[test]
fn exact_tau_reports_bounds_under_a_tiny_budget() {
    let out = run(&["--node-limit", "2", "exact", "tau", "--n", "9", "--r", "2", "--s", "6"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert!(v["lower"].as_u64().unwrap() <= v["upper"].as_u64().unwrap());
    if v["status"] == "bounded" {
        assert_eq!(v["optimal"], false);
    }
}

#[test]
fn sweep_example_has_one_row_per_point() {
    let out = run(&["sweep", "--grid", "n=4..10:2,r=3,s=4..5", "--quantity", "tau,nu,lp"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,r,s,tau,tau_status,nu,nu_status,lp,lp_f64");
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[3], "6,3,4,7,optimal,7,optimal,7,7");
}

#[test]
fn sweep_skips_points_outside_the_domain() {
    let out = run(&["sweep", "--grid", "n=5..8,r=2,s=3", "--quantity", "construct,verify"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let ns: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(ns, ["6", "8"]);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
}

#[test]
fn density_table_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--out-dir", path(dir.path()), "label", "odd", "--k", "3", "--density", "100..120:10"]);
    assert!(out.status.success());
    let rows = read_density_csv(out.stdout.as_slice()).unwrap();
    assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![100, 110, 120]);
    assert_eq!(rows[2].bad, 68440);
    let saved = std::fs::read(dir.path().join("density-odd-k3.csv")).unwrap();
    assert_eq!(saved, out.stdout);

    let mismatch = run(&["label", "even", "--k", "3", "--density", "4..6"]);
    assert_eq!(mismatch.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&mismatch.stderr).unwrap();
    assert_eq!(err["error"], "parameter");
}

#[test]
fn labeling_csv_with_sidecar_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--out-dir", path(dir.path()), "label", "even", "--n", "12", "--k", "4"]);
    assert!(out.status.success());
    let csv = dir.path().join("labeling-even-n12-k4.csv");
    let meta: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("labeling-even-n12-k4.json")).unwrap()).unwrap();
    assert_eq!(meta["monotone"], true);
    assert!(meta["choices"].as_array().unwrap().len() >= 2);
    let checked = run(&["verify", "labeling", "--input", path(&csv), "--k", "4"]);
    assert!(checked.status.success());
    let cert = stdout_json(&checked);
    assert_eq!(cert["value"], meta["good"]);
    assert_eq!(cert["parameters"]["bad"], meta["bad"]);
}

#[test]
fn lp_outputs() {
    let out = run(&["lp", "--n", "8", "--r", "2", "--s", "4"]);
    assert!(out.status.success());
    let v = stdout_json(&out);
    assert_eq!(v["value"], "6");
    assert_eq!(v["status"], "optimal");
    let text = run(&["lp", "--n", "5", "--r", "2", "--s", "3", "--format", "cplex"]);
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(text.contains("Minimize") && text.contains("Subject To") && text.trim_end().ends_with("End"));
    assert_eq!(text.matches(">= 1").count(), 10);
}

#[test]
fn usage_and_precondition_errors() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "transversal", "--n", "6"]).status.code(), Some(2));
    let odd = run(&["construct", "packing", "--n", "7", "--r", "3", "--s", "5"]);
    assert_eq!(odd.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&odd.stderr).unwrap();
    assert_eq!(err["error"], "parameter");
    assert!(err["message"].as_str().unwrap().contains("even"));
    assert_eq!(run(&["reproduce", "12"]).status.code(), Some(1));
}

#[test]
fn reproduce_single_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&["--out-dir", path(dir.path()), "reproduce", "4"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stderr).unwrap().contains("criterion 4 PASS"));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("criterion-4.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], true);
}
