use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn wkb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkb")).args(args).output().expect("wkb runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wkb-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).expect("scratch dir");
    let p = dir.join(name);
    fs::write(&p, text).expect("scratch file");
    p
}

#[test]
fn passing_suite_exits_zero_with_summary() {
    let o = wkb(&["awfs", "check", "--builtin", "splitepi", "--finset-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("SUMMARY pass=") && l.contains("fail=0")), "{out}");
    assert!(out.lines().all(|l| !l.contains(": FAIL")));
}

#[test]
fn failing_law_exits_one() {
    let bad = scratch("bad_module.json", r#"{"algebra": {"kind": "dual_numbers"}, "complex": {"degrees": {"0": 1}}, "action": [[1, 1]]}"#);
    let o = wkb(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("document-laws"));
}

#[test]
fn malformed_input_exits_two() {
    let bad = scratch("truncated.json", "{\"degrees\": {\"0\": 1,");
    let o = wkb(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("line 1 column"), "{err}");
    let o = wkb(&["weakmaps", "compare", "--comonad", "reader:S=2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn valid_documents_pass() {
    let c = scratch("complex.json", r#"{"degrees": {"0": 1, "1": 1}, "boundary": {"1": [[2]]}}"#);
    let m = scratch("module.json", r#"{"algebra": {"kind": "exterior"}, "kind": "regular"}"#);
    let o = wkb(&["validate", c.to_str().unwrap(), m.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn seeded_runs_are_reproducible() {
    let args = ["--seed", "7", "dg", "check", "--builtin", "all", "--instances", "6", "--trunc", "3"];
    let (a, b) = (wkb(&args), wkb(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).lines().any(|l| l == "# seed: 7"));
    let other = wkb(&["--seed", "8", "dg", "check", "--builtin", "all", "--instances", "6", "--trunc", "3"]);
    assert_ne!(a.stdout, other.stdout);
}

#[test]
fn json_output_parses() {
    let o = wkb(&["--format", "json", "bar", "resolve", "--trunc", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json report");
    assert!(v.get("checks").and_then(|c| c.as_array()).is_some_and(|c| !c.is_empty()), "{v}");
}

#[test]
fn weak_map_counts_table() {
    let o = wkb(&["weakmaps", "compare", "--comonad", "coreader:S=2", "--A", "1", "--B", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("TABLE weak-maps"), "{out}");
}
