use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn antimagic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_antimagic"))
        .args(args)
        .env_remove("ANTIMAGIC_SOLVER_CAP")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn construct_two_colour_union() {
    let out = antimagic(&["construct", "--spec", "C(10,10,4)"]);
    assert_eq!(code(&out), 0);
    let cert = stdout_json(&out);
    assert_eq!(cert["c"], 2);
    assert_eq!(cert["valid"], true);
    assert_eq!(cert["distinct_colors"], serde_json::json!([25, 30]));
}

#[test]
fn construct_triangle_book() {
    let out = antimagic(&["construct", "--spec", "GB(3,3)"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["c"], 3);
}

#[test]
fn construct_exit_codes() {
    assert_eq!(code(&antimagic(&["construct", "--spec", "C(3)"])), 2);
    assert_eq!(code(&antimagic(&["construct", "--spec", "C(3,3"])), 2);
    assert_eq!(code(&antimagic(&["construct", "--spec", "GP(2;3)"])), 3);
    assert_eq!(code(&antimagic(&["construct", "--spec", "Corona(3,1)", "--no-fallback"])), 3);
}

#[test]
fn construct_writes_file_and_verify_reads_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("corona.json");
    let out = antimagic(&["construct", "--spec", "Corona(3,1)", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let out = antimagic(&["verify", "--cert", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["c"], 5);
}

#[test]
fn verify_rejects_tampered_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let out = antimagic(&["construct", "--spec", "T(3,4)"]);
    let mut cert = stdout_json(&out);
    cert["c"] = Value::from(2);
    let path = write(dir.path(), "bad.json", &cert.to_string());
    assert_eq!(code(&antimagic(&["verify", "--cert", &path])), 2);
    let path = write(dir.path(), "garbage.json", "{ not json");
    assert_eq!(code(&antimagic(&["verify", "--cert", &path])), 2);
}

#[test]
fn verify_edge_lists() {
    let dir = tempfile::tempdir().unwrap();
    // Claw with one subdivided arm: vertex 1 has degree 3.
    let graph = write(dir.path(), "g.el", "p 5 4\n1 2\n1 3\n1 4\n4 5\n");
    let out = antimagic(&["verify", "--graph", &graph, "--labels", "1,2,3,4"]);
    assert_eq!(code(&out), 0);
    let out = antimagic(&["verify", "--graph", &graph, "--labels", "1,1,3,4"]);
    assert_eq!(code(&out), 2);
    // f+(1) = 1 + 2 + 4 = 7 = 4 + 3 = f+(4).
    let out = antimagic(&["verify", "--graph", &graph, "--labels", "1,2,4,3"]);
    assert_eq!(code(&out), 4);
    let cert = stdout_json(&out);
    assert_eq!(cert["violations"], serde_json::json!([["1", "4"]]));
    let labels = write(dir.path(), "labels.txt", "1 2 3 4\n");
    assert_eq!(code(&antimagic(&["verify", "--graph", &graph, "--labels", &labels])), 0);
    assert_eq!(code(&antimagic(&["verify", "--graph", &graph, "--labels", "1,2,3"])), 2);
    let bad = write(dir.path(), "bad.el", "p 3 2\n1 2\n");
    assert_eq!(code(&antimagic(&["verify", "--graph", &bad, "--labels", "1,2"])), 2);
}

#[test]
fn solve_reports_exact_values() {
    for (spec, want) in [("Corona(3,1)", 5), ("K(2;2,1)", 4), ("Path(4)", 3)] {
        let out = antimagic(&["solve", "--spec", spec]);
        assert_eq!(code(&out), 0, "{spec}");
        let r = stdout_json(&out);
        assert_eq!(r["status"], "exact", "{spec}");
        assert_eq!(r["lower"], want, "{spec}");
        assert_eq!(r["witness"]["c"], want, "{spec}");
    }
    let out = antimagic(&["solve", "--spec", "Corona(4,1)", "--jobs", "3"]);
    assert_eq!(stdout_json(&out)["lower"], 6);
}

#[test]
fn solve_targets_and_limits() {
    let dir = tempfile::tempdir().unwrap();
    let triangle = write(dir.path(), "k3.el", "p 3 3\n1 2\n2 3\n3 1\n");
    let out = antimagic(&["solve", "--graph", &triangle, "--target", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout_json(&out)["found"], false);
    let out = antimagic(&["solve", "--graph", &triangle, "--target", "3"]);
    assert_eq!(stdout_json(&out)["witness"]["c"], 3);
    let out = antimagic(&["solve", "--spec", "Corona(5,4)"]);
    assert_eq!(code(&out), 5);
    let out = antimagic(&["solve", "--spec", "K(3;2,2,2)", "--nodes", "10"]);
    assert_eq!(code(&out), 0);
    assert_ne!(stdout_json(&out)["status"], "exact");
}

#[test]
fn predict_corona_interval() {
    let out = antimagic(&["predict", "--spec", "Corona(5,2)"]);
    assert_eq!(code(&out), 0);
    let p = stdout_json(&out);
    assert_eq!(p["value"], serde_json::json!({"kind": "interval", "lo": 12, "hi": 13}));
}

#[test]
fn sweep_tadpoles_agree() {
    let out = antimagic(&["sweep", "--family", "Tadpole", "--range", "2..6,3..6", "--jobs", "4"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = reader.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["spec", "q", "n", "lower", "constructed_c", "predicted", "solver", "agree"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 20);
    assert_eq!(&rows[0][0], "T(2,3)");
    assert_eq!(&rows[19][0], "T(6,6)");
    for row in &rows {
        assert_eq!(&row[4], "3");
        assert_eq!(&row[6], "3");
        assert_eq!(&row[7], "true");
    }
}

#[test]
fn sweep_special_unions_and_disagreements() {
    let out = antimagic(&["sweep", "--spec", "C(10,10,4)", "--spec", "C(6,4,4)", "--spec", "C(10,10,8,8,8)"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.contains(",2,2,")).count(), 3, "{text}");
    let out = antimagic(&["sweep", "--spec", "Ct(3;3,0,4)"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("outside prediction"));
}

#[test]
fn sweep_is_deterministic_and_respects_cap() {
    let args = ["sweep", "--family", "K", "--range", "3;0..2,0..2,0..2", "--jobs", "4"];
    let a = antimagic(&args);
    let b = antimagic(&args);
    assert_eq!(a.stdout, b.stdout);
    let capped = Command::new(env!("CARGO_BIN_EXE_antimagic"))
        .args(["sweep", "--spec", "Corona(4,2)"])
        .env("ANTIMAGIC_SOLVER_CAP", "8")
        .output()
        .unwrap();
    let text = String::from_utf8(capped.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().contains(",-,"), "{text}");
    let human = antimagic(&["sweep", "--spec", "Path(4)", "--human"]);
    assert!(String::from_utf8(human.stdout).unwrap().starts_with("spec"));
    assert_eq!(code(&antimagic(&["sweep", "--family", "Nope", "--range", "1"])), 2);
}

#[test]
fn export_dot() {
    let out = antimagic(&["export-dot", "--spec", "Path(3)", "--labeled"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("graph G {"));
    assert!(text.contains("\"v1\" -- \"v2\" [label="));
    let out = antimagic(&["export-dot", "--spec", "Star(4)"]);
    assert!(!String::from_utf8(out.stdout).unwrap().contains("label=\"1\""));
}
