use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_surfminor"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn pattern_file(dir: &TempDir, name: &str) -> PathBuf {
    let out = run(&["pattern", name]);
    assert!(out.status.success());
    let file = format!("{}.txt", name.replace(['(', ')', '\''], "_"));
    write(dir, &file, &String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--output", "json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Runs a command in JSON mode, saves the report and feeds it to `verify`.
fn closed_loop(dir: &TempDir, graph: &Path, args: &[&str]) -> Value {
    let (code, v) = json(args);
    assert_eq!(code, 0, "{v}");
    let rep = write(dir, "report.json", &v.to_string());
    let (vc, vv) = json(&["verify", s(graph), s(&rep)]);
    assert_eq!(vc, 0, "{vv}");
    assert_eq!(vv["result"]["ok"], Value::Bool(true));
    v
}

#[test]
fn planar_and_genus_examples() {
    let dir = TempDir::new().unwrap();
    let k5 = pattern_file(&dir, "sigma1(1)");
    let v = closed_loop(&dir, &k5, &["planar", s(&k5)]);
    assert_eq!(v["result"]["planar"], Value::Bool(false));
    assert_eq!(v["result"]["witness"]["kind"], "K5");
    let k33 = pattern_file(&dir, "sigma2(1)");
    let v = closed_loop(&dir, &k33, &["genus", s(&k33), "--budget", "2", "--timeout", "30"]);
    assert_eq!(v["result"]["genus"], 1);
    let (code, _) = json(&["genus", s(&k5), "--budget", "0", "--timeout", "10"]);
    assert_eq!(code, 2);
}

#[test]
fn parse_errors_and_warnings() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "loop.txt", "0 1\n1 1\n");
    let out = run(&["planar", s(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let dup = write(&dir, "dup.txt", "0 1\n1 0\n");
    let out = run(&["planar", s(&dup)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate"));
}

#[test]
fn budgets_and_timeouts_are_required_and_bounded() {
    let dir = TempDir::new().unwrap();
    let g = write(&dir, "g.txt", "0 1\n");
    for args in [
        vec!["genus", s(&g), "--budget", "1"],
        vec!["genus", s(&g), "--timeout", "1"],
        vec!["genus", s(&g), "--budget", "1000", "--timeout", "1"],
        vec!["genus", s(&g), "--budget", "1", "--timeout", "0"],
    ] {
        assert_eq!(run(&args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn classify_recognizes_sigma3() {
    let dir = TempDir::new().unwrap();
    let g = pattern_file(&dir, "sigma3(3)");
    let v = closed_loop(&dir, &g, &["classify", s(&g), "-n", "3", "-k", "2", "--budget", "0", "--timeout", "60"]);
    let found: Vec<&Value> = v["result"]["witnesses"].as_array().unwrap().iter().map(|w| &w["pattern"]).collect();
    assert!(found.iter().any(|p| p["family"] == "sigma" && p["index"] == 3 && p["level"] == 3), "{found:?}");
}

#[test]
fn witnesses_verify_in_closed_loop() {
    let dir = TempDir::new().unwrap();
    let host = pattern_file(&dir, "sigma5(2)");
    closed_loop(&dir, &host, &["minor", s(&host), "--pattern", "sigma8(2)", "--timeout", "30"]);
    closed_loop(&dir, &host, &["decompose", s(&host), "--budget", "2", "--timeout", "60"]);
    for engine in ["forest-del", "forest-con", "outerplanar", "planar-v"] {
        closed_loop(&dir, &host, &["dichotomy", engine, s(&host), "-n", "2", "-k", "3", "--timeout", "30"]);
    }
    let theta = pattern_file(&dir, "theta3");
    closed_loop(&dir, &theta, &["outerplanar", s(&theta)]);
    closed_loop(&dir, &theta, &["marked-minor", s(&theta), "--pattern", "theta3", "--timeout", "10"]);
    let u = pattern_file(&dir, "U5(3)");
    closed_loop(&dir, &u, &["su-obstruct", s(&u), "--budget", "0", "-n", "3", "--timeout", "60"]);
    let star = write(&dir, "star.txt", "0 1\n0 2\n0 3\n0 4\n1 5\n2 6\n3 7\n4 8\nM 5\nM 6\nM 7\nM 8\n");
    closed_loop(&dir, &star, &["starcomb", s(&star), "-n", "2", "--timeout", "10"]);
}

#[test]
fn tampered_reports_fail() {
    let dir = TempDir::new().unwrap();
    let host = pattern_file(&dir, "sigma1(1)");
    let (_, v) = json(&["minor", s(&host), "--pattern", "sigma2(1)", "--timeout", "10"]);
    assert_eq!(v["result"]["result"], "absent");
    let (_, mut v) = json(&["minor", s(&host), "--pattern", "theta1", "--timeout", "10"]);
    let bs = v["result"]["model"]["branch_sets"].as_object_mut().unwrap();
    let first = bs.keys().next().unwrap().clone();
    bs.insert(first, serde_json::json!([]));
    let rep = write(&dir, "bad.json", &v.to_string());
    let out = run(&["verify", s(&host), s(&rep)]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn human_and_json_agree() {
    let dir = TempDir::new().unwrap();
    let k5 = pattern_file(&dir, "sigma1(1)");
    for args in [vec!["genus", s(&k5), "--budget", "0", "--timeout", "5"], vec!["genus", s(&k5), "--budget", "1", "--timeout", "5"]] {
        let human = run(&args).status.code();
        let (code, _) = json(&args);
        assert_eq!(human, Some(code));
    }
}

#[test]
fn pattern_output_round_trips() {
    let a = run(&["pattern", "U'2(3)"]);
    let b = run(&["pattern", "U'2(3)", "--format", "json"]);
    let doc: Value = serde_json::from_slice(&b.stdout).unwrap();
    let text = String::from_utf8(a.stdout).unwrap();
    let marks = text.lines().filter(|l| l.starts_with("M ")).count();
    assert_eq!(marks, doc["marked"].as_array().unwrap().len());
    assert_eq!(text.lines().filter(|l| l.contains(' ') && !l.starts_with('M')).count(), doc["edges"].as_array().unwrap().len());
}

#[test]
fn catalog_check_runs() {
    let (code, v) = json(&["catalog-check", "-n", "2", "--timeout", "60"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["ok"], Value::Bool(true));
}
