//! End-to-end runs of the command-line binary.

use std::process::{Command, Output};

use serde_json::{json, Value};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_radical-hopf")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn basis_emits_e_1_1() {
    // e_{1,1} = (1 + ζ²σ + ζσ²)/3 with ζ² = -1 - ζ
    let out = run(&["basis", "--p", "3", "--n", "1", "--i", "1", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["coeffs"], json!([["1/3", "0/1"], ["-1/3", "-1/3"], ["0/1", "1/3"]]));
}

#[test]
fn act_projects_onto_a_power_of_w() {
    let out = run(&["act", "--p", "3", "--n", "1", "--i", "1", "--x", "5,7/2,-1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["coords"], json!(["0/1", "7/2", "0/1"]));
}

#[test]
fn smash_matrix_decomposes_back() {
    let m = run(&["smash", "--p", "3", "--n", "2", "--left", "4,2"]);
    assert_eq!(m.status.code(), Some(0));
    let text = String::from_utf8(m.stdout).unwrap();
    let out = run(&["decompose", "--p", "3", "--n", "2", "--matrix", text.trim()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["terms"], json!([{ "c": "1/1", "i": 2, "j": 4 }]));
}

#[test]
fn verify_all_on_one_instance_passes() {
    let out = run(&["verify-all", "--p", "3", "--n", "2", "--a", "2/1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let lines: Vec<Value> =
        String::from_utf8(out.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 10);
    assert!(lines.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn census_on_the_cubic_instance_reports_one_subgroup() {
    let out = run(&["census", "--p", "3", "--n", "1", "--r", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["data"]["count"], 1);
    assert_eq!(v["data"]["almost_classical"], 1);
}

#[test]
fn census_reads_a_group_pair() {
    // S_3 with trivial Δ: the Galois case, five structures
    let dir = std::env::temp_dir().join(format!("radical-hopf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("s3.json");
    std::fs::write(&path, r#"{"gamma": [[1,2,0],[1,0,2]], "delta": []}"#).unwrap();
    let out = run(&["census", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout_json(&out)["data"]["count"], 5);
}

#[test]
fn output_is_deterministic_and_written_to_file() {
    let dir = std::env::temp_dir().join(format!("radical-hopf-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.jsonl");
    let args = ["profinite", "--p", "3", "--level", "2", "--out", path.to_str().unwrap()];
    assert_eq!(run(&args).status.code(), Some(0));
    let first = std::fs::read(&path).unwrap();
    assert_eq!(run(&args).status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), first);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["basis", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["basis", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["act", "--p", "3", "--a", "0.5", "--i", "0", "--x", "1,0,0"]).status.code(), Some(2));
    assert_eq!(run(&["census", "--p", "3", "--n", "4", "--r", "0"]).status.code(), Some(3));
}
