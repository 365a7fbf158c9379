use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn pc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pc")).args(args).output().expect("pc runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn file(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const K4: &str = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n";
const STAR3: &str = "4 3\n0 1\n0 2\n0 3\n";
const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";
const C7: &str = "7 7\n0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 0\n";
const PETERSEN: &str = "10 15\n0 1\n1 2\n2 3\n3 4\n4 0\n0 5\n1 6\n2 7\n3 8\n4 9\n5 7\n7 9\n9 6\n6 8\n8 5\n";

#[test]
fn exact_values() {
    let dir = TempDir::new().unwrap();
    for (text, want) in [(K4, 1), (STAR3, 3), (C5, 2)] {
        let g = file(&dir, "g.txt", text);
        let out = pc(&["exact", s(&g), "--json"]);
        assert_eq!(code(&out), 0);
        assert_eq!(report(&out)["result"]["value"], want);
    }
}

#[test]
fn exact_out_of_budget_is_inconclusive() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "p.txt", PETERSEN);
    let out = pc(&["exact", s(&g), "--strong", "--budget-nodes", "3"]);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "bad.txt", "3 2\n0 1\n1 q\n");
    let out = pc(&["exact", s(&g)]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn graph6_input() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "k4.g6", "C~\n");
    let out = pc(&["--format", "graph6", "exact", s(&g), "--json"]);
    assert_eq!(report(&out)["result"]["value"], 1);
}

#[test]
fn color_methods() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", PETERSEN);
    let out = pc(&["color", s(&p), "--method", "3ec", "--json"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["colors_used"], 2);
    assert_eq!(r["result"]["proper_connected"], true);
    assert_eq!(r["result"]["strong"], true);

    let c7 = file(&dir, "c7.txt", C7);
    let out = pc(&["color", s(&c7), "--method", "diam3", "--explain", "--json"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["result"]["colors_used"], 2);
    assert_eq!(r["result"]["explanation"]["case"], "Case2_OddCycle");

    let c5 = file(&dir, "c5.txt", C5);
    let out = pc(&["color", s(&c5), "--method", "3ec"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("edge connectivity is 2"));
}

#[test]
fn colorings_round_trip_through_verify() {
    let dir = TempDir::new().unwrap();
    let p = file(&dir, "p.txt", PETERSEN);
    let c = dir.path().join("c.json");
    assert_eq!(code(&pc(&["color", s(&p), "--method", "3ec", "-o", s(&c)])), 0);
    assert_eq!(code(&pc(&["verify", s(&p), s(&c), "--strong"])), 0);
}

#[test]
fn verify_verdicts() {
    let dir = TempDir::new().unwrap();
    let c4 = file(&dir, "c4.txt", "4 4\n0 1\n1 2\n2 3\n3 0\n");
    let col = file(&dir, "c4.json", r#"{"k":2,"edges":[[0,1,1],[1,2,2],[2,3,1],[3,0,2]]}"#);
    let out = pc(&["verify", s(&c4), s(&col), "--strong", "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["strong"], true);

    let p3 = file(&dir, "p3.txt", "3 2\n0 1\n1 2\n");
    let col = file(&dir, "p3.json", r#"{"k":2,"edges":[[0,1,1],[1,2,1]]}"#);
    let out = pc(&["verify", s(&p3), s(&col), "--json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["result"]["failing_pair"], serde_json::json!([0, 2]));

    let k4 = file(&dir, "k4.txt", K4);
    let col = file(&dir, "k4.json", r#"{"k":1,"edges":[[0,1,1],[0,2,1],[0,3,1],[1,2,1],[1,3,1],[2,3,1]]}"#);
    let out = pc(&["verify", s(&k4), s(&col), "--strong", "--json"]);
    assert_eq!(code(&out), 1);
    let r = report(&out);
    assert_eq!(r["result"]["proper_connected"], true);
    assert_eq!(r["result"]["strong"], false);

    let partial = file(&dir, "partial.json", r#"{"k":1,"edges":[[0,1,1]]}"#);
    assert_eq!(code(&pc(&["verify", s(&k4), s(&partial)])), 2);
}

#[test]
fn gen_and_refute_mini() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("mini.txt");
    let spec = dir.path().join("spec.json");
    let out =
        pc(&["gen", "counterexample", "--variant", "mini", "--scale", "1", "-o", s(&g), "--spec", s(&spec), "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["result"]["n"], 27);

    let rep = dir.path().join("report.json");
    let out = pc(&["refute", s(&g), s(&spec), "--trials", "100", "--seed", "7", "--report", s(&rep)]);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(r["result"]["refuted"], 100);
    assert_eq!(r["result"]["witnesses_verified"], 100);
    assert_eq!(r["seed"], 7);
}

#[test]
fn deterministic_reports_do_not_depend_on_jobs() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("mini.txt");
    let spec = dir.path().join("spec.json");
    pc(&["gen", "counterexample", "--variant", "mini", "-o", s(&g), "--spec", s(&spec)]);
    let run = |jobs: &str| {
        let out =
            pc(&["refute", s(&g), s(&spec), "-t", "40", "--seed", "3", "--deterministic", "--json", "--jobs", jobs]);
        let mut r = report(&out);
        r["command"] = Value::Null;
        r
    };
    let one = run("1");
    assert_eq!(one, run("1"));
    assert_eq!(one, run("3"));
}

#[test]
fn refute_rejects_three_colorings() {
    let dir = TempDir::new().unwrap();
    let g = dir.path().join("mini.txt");
    let spec = dir.path().join("spec.json");
    pc(&["gen", "counterexample", "--variant", "mini", "-o", s(&g), "--spec", s(&spec)]);
    let c = dir.path().join("c.json");
    assert_eq!(code(&pc(&["color", s(&g), "--method", "2conn", "-o", s(&c)])), 0);
    let out = pc(&["refute", s(&g), s(&spec), "--coloring", s(&c)]);
    assert_eq!(code(&out), 2);
}

#[test]
fn sample_is_reproducible() {
    let dir = TempDir::new().unwrap();
    let g = file(&dir, "c5.txt", C5);
    let a = pc(&["sample", s(&g), "-k", "2", "-t", "50", "--seed", "9", "--deterministic", "--json"]);
    let b = pc(&["sample", s(&g), "-k", "2", "-t", "50", "--seed", "9", "--deterministic", "--json", "--jobs", "2"]);
    assert_eq!(code(&a), 0);
    let (mut ra, mut rb) = (report(&a), report(&b));
    ra["command"] = Value::Null;
    rb["command"] = Value::Null;
    assert_eq!(ra, rb);
    assert_eq!(ra["result"]["failed"].as_u64().unwrap() + ra["result"]["proper_connected"].as_u64().unwrap(), 50);
}
