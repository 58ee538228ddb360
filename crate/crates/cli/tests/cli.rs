use std::process::{Command, Output};

use ilmt::edgelist::{parse_oriented, parse_tournament};
use ilmt::fixtures;
use serde_json::Value;

fn ilmt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ilmt"))
        .args(args)
        .env_remove("ILMT_MAX_NODES")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json(args: &[&str]) -> Value {
    let out = ilmt(args);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(&out)).expect("json report")
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(m) => {
            m.remove("elapsed_ms");
            m.values_mut().for_each(strip_timing);
        }
        Value::Array(a) => a.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

#[test]
fn generate_figure_one() {
    let out = ilmt(&["generate", "--base", "edge", "--seq", "10", "--steps", "2", "--format", "edgelist"]);
    assert_eq!(code(&out), 0);
    let g = parse_tournament(&stdout(&out)).unwrap();
    assert_eq!(g, fixtures::figure1_g2());
}

#[test]
fn generate_zero_steps_echoes_base() {
    let out = ilmt(&["generate", "--base", "d3", "--steps", "0"]);
    assert_eq!(parse_tournament(&stdout(&out)).unwrap(), fixtures::d3());
}

#[test]
fn generate_oriented_figure_three() {
    let out = ilmt(&["generate", "--base", "edge", "--seq", "10", "--steps", "2", "--oriented"]);
    assert_eq!(code(&out), 0);
    let g = parse_oriented(&stdout(&out)).unwrap();
    assert_eq!(g.arcs(), fixtures::figure3_g2().arcs());
}

#[test]
fn generate_formats() {
    let v = json(&["generate", "--base", "d3", "--seq", "1", "--format", "json"]);
    assert_eq!(v["n"], 6);
    assert_eq!(v["arcs"].as_array().unwrap().len(), 15);
    let dot = stdout(&ilmt(&["generate", "--base", "edge", "--seq", "10", "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("label=\"(a')'\""));
    assert!(dot.contains("label=\"b''\""));
}

#[test]
fn edge_list_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    let out = ilmt(&["generate", "--base", "t3", "--seq", "01", "--out", p]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let again = ilmt(&["generate", "--base", p, "--steps", "0"]);
    assert_eq!(stdout(&again), std::fs::read_to_string(&path).unwrap());
}

#[test]
fn census_examples() {
    let v = json(&["census", "--base", "d3", "--k", "3"]);
    assert_eq!((v["a"].as_u64(), v["b"].as_u64()), (Some(1), Some(0)));
    let v = json(&["census", "--base", "d3", "--seq", "0", "--steps", "1", "--k", "3"]);
    assert_eq!((v["a"].as_u64(), v["b"].as_u64()), (Some(8), Some(12)));
    let v = json(&["census", "--base", "d3", "--seq", "00", "--k", "4"]);
    let counts = v["counts"].as_object().unwrap();
    assert_eq!(counts.values().map(|c| c.as_u64().unwrap()).sum::<u64>(), 495);
}

#[test]
fn census_trace_heads_for_the_stationary_vector() {
    let v = json(&["census", "--base", "d3", "--seq", "0", "--steps", "6", "--k", "4", "--trace"]);
    let pi = [3.0 / 8.0, 1.0 / 8.0, 1.0 / 8.0, 3.0 / 8.0];
    let gap = |row: &Value| {
        row["sigma"]
            .as_array()
            .unwrap()
            .iter()
            .zip(pi)
            .map(|(r, p)| (r["num"].as_f64().unwrap() / r["den"].as_f64().unwrap() - p).abs())
            .fold(0.0, f64::max)
    };
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(gap(&rows[6]) < gap(&rows[1]));
    assert!(gap(&rows[6]) < 0.02);
}

#[test]
fn analyze_examples() {
    let v = json(&["analyze", "--base", "d3"]);
    assert_eq!(
        (&v["diameter"], &v["strong"], &v["kappa"], &v["gamma_in"], &v["gamma_out"]),
        (&Value::from(2), &Value::from(true), &Value::from(1), &Value::from(2), &Value::from(2))
    );
    assert!(v.get("chi").is_none());
    let v = json(&["analyze", "--base", "t3"]);
    assert_eq!(
        (&v["strong"], &v["kappa"], &v["gamma_in"], &v["gamma_out"]),
        (&Value::from(false), &Value::from(0), &Value::from(1), &Value::from(1))
    );
    let v = json(&["analyze", "--base", "d3", "--seq", "0", "--steps", "1", "--cop", "--chi"]);
    let c = v["cop"]["cop_number"].as_u64().unwrap();
    assert!((2..=3).contains(&c));
    assert_eq!(v["cop"]["strategy_verified"], true);
    assert!(v["chi"]["chi"].as_u64().is_some());
}

#[test]
fn solve_cops() {
    let v = json(&["solve-cops", "--base", "d3", "--strategy"]);
    assert_eq!(v["cop_number"], 2);
    assert_eq!(v["strategy_verified"], true);
    assert!(!v["strategy"]["moves"].as_array().unwrap().is_empty());
    let v = json(&["solve-cops", "--base", "d3", "--k", "1"]);
    assert_eq!(v["cops_win"], false);
}

#[test]
fn verify_exit_codes() {
    let out = ilmt(&["verify", "coloring"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["failed"], 0);
    let deltas: Vec<&Value> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["claim"].as_str().unwrap().contains("change under a 0-step"))
        .collect();
    assert_eq!(deltas.len(), 3);
    // the in-domination statements do not hold on small bases
    let out = ilmt(&["verify", "domination"]);
    assert_eq!(code(&out), 3);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["failed"].as_u64().unwrap() > 0);
}

#[test]
fn embed_examples() {
    let v = json(&["embed", "--base", "t3", "--target", "d3", "--seq", "000"]);
    assert_eq!(v["host_order"], 24);
    assert_eq!(v["verified"], true);
    let v = json(&["embed", "--base", "d3", "--target", "d3", "--seq", "000"]);
    assert_eq!(v["verified"], true);
    let v = json(&["embed", "--base", "d3", "--target", "d3", "--seq", "000", "--full"]);
    assert_eq!(v["zeros_used"], 3);
    let out = ilmt(&["embed", "--base", "d3", "--target", "t4", "--seq", "0000"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn error_exit_codes() {
    assert_eq!(code(&ilmt(&["generate"])), 1);
    assert_eq!(code(&ilmt(&["generate", "--base", "nope"])), 1);
    assert_eq!(code(&ilmt(&["generate", "--base", "d3", "--seq", "012"])), 1);
    assert_eq!(code(&ilmt(&["generate", "--base", "d3", "--steps", "2"])), 1);
    assert_eq!(code(&ilmt(&["census", "--base", "d3", "--k", "5"])), 1);
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "n 2\n0 1\n1 0\n").unwrap();
    assert_eq!(code(&ilmt(&["analyze", "--base", bad.to_str().unwrap()])), 1);
    // caps
    assert_eq!(code(&ilmt(&["generate", "--base", "d3", "--seq", "0", "--repeat", "20"])), 2);
    assert_eq!(code(&ilmt(&["--max-nodes", "10", "generate", "--base", "d3", "--seq", "00"])), 2);
    assert_eq!(code(&ilmt(&["census", "--base", "d3", "--seq", "0", "--steps", "10", "--k", "4"])), 2);
    assert_eq!(code(&ilmt(&["--help"])), 0);
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["verify", "motifs"][..],
        &["analyze", "--base", "hero:3", "--seq", "0", "--chi", "--cop"][..],
        &["census", "--base", "t3", "--seq", "0", "--steps", "5", "--k", "4", "--trace"][..],
    ] {
        let mut one: Value = serde_json::from_str(&stdout(&ilmt(args))).unwrap();
        let threaded: Vec<&str> = ["--threads", "1"].iter().chain(args).copied().collect();
        let mut two: Value = serde_json::from_str(&stdout(&ilmt(&threaded))).unwrap();
        strip_timing(&mut one);
        strip_timing(&mut two);
        assert_eq!(one, two, "{args:?}");
    }
}
