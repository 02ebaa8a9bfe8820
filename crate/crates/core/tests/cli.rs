//! End-to-end runs of the `splitinv` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_splitinv")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scenario(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "scenarios", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn temp_file(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("splitinv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn hilbert_prints_the_symbol() {
    let o = bin(&["hilbert", "2", "5", "--place", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-1");
    let o = bin(&["hilbert", "-1", "-1", "--place", "real"]);
    assert_eq!(stdout(&o).trim(), "-1");
    let o = bin(&["hilbert", "3/4", "7", "--place", "2"]);
    assert_eq!(stdout(&o).trim(), "-1");
}

#[test]
fn hilbert_rejects_a_composite_place() {
    let o = bin(&["hilbert", "2", "3", "--place", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("place"), "{}", stderr(&o));
}

#[test]
fn delta_ks_is_not_chi_invariant() {
    let o = bin(&["factors", "--variant", "delta_ks"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["result"]["chi_invariant"], Value::Bool(false));
    let o = bin(&["factors", "--variant", "delta_d"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["result"]["chi_invariant"], Value::Bool(true));
    assert_eq!(r["passed"], Value::Bool(true));
}

#[test]
fn sample_scenarios_pass() {
    for name in ["a2_flip_symbolic.json", "sl4_flip_random.json", "sl3_special_explicit.json", "d4_untwisted.json"] {
        let o = bin(&["invariant", &scenario(name)]);
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stderr(&o));
        let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(r["passed"], Value::Bool(true), "{name}");
        assert!(r["result"]["lambda_T"].is_object(), "{name}");
    }
}

#[test]
fn malformed_scenarios_name_the_field() {
    let cases = [
        ("unknown.json", r#"{"datum": {"type": [["A", 2]]}, "galois": {}, "adata": {"mode": "random"}, "colour": 1}"#, "colour"),
        ("badd.json", r#"{"datum": {"type": [["A", 2]]}, "galois": {"field": {"d": 4}}, "adata": {"mode": "random"}}"#, "galois.field.d"),
        ("perm.json", r#"{"datum": {"type": [["A", 2]]}, "theta": {"perm": [1, 1]}, "galois": {}, "adata": {"mode": "symbolic"}}"#, "theta.perm"),
        ("mode.json", r#"{"datum": {"type": [["A", 2]]}, "galois": {}, "adata": {"mode": "guess"}}"#, "adata.mode"),
        ("json.json", "{ not json", "scenario"),
    ];
    for (file, body, field) in cases {
        let o = bin(&["invariant", &temp_file(file, body)]);
        assert_eq!(o.status.code(), Some(2), "{file}");
        assert!(stderr(&o).contains(&format!("`{field}`")), "{file}: {}", stderr(&o));
    }
}

#[test]
fn same_seed_same_bytes() {
    let path = scenario("sl4_flip_random.json");
    let a = bin(&["invariant", &path, "--seed", "11"]);
    let b = bin(&["invariant", &path, "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert!(a.stdout == b.stdout, "reports differ");
    let c = bin(&["invariant", &path, "--seed", "12"]);
    assert!(a.stdout != c.stdout, "seed is ignored");
    let a = bin(&["verify", "--suite", "aa", "--seed", "5"]);
    let b = bin(&["verify", "--suite", "aa", "--seed", "5"]);
    assert!(a.stdout == b.stdout, "suite reports differ");
}

#[test]
fn out_flag_writes_the_report() {
    let out = temp_file("report.json", "");
    let o = bin(&["verify", "--suite", "appendix", "--out", &out]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["passed"], Value::Bool(true));
    let names: Vec<&str> = r["checks"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"appendix/Q/n3_prime"));
    assert_eq!(r["input_digest"].as_str().unwrap().len(), 64);
}

#[test]
fn restrict_reports_the_non_reduced_pattern() {
    let o = bin(&["restrict", "A4", "--flip"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("R2") && text.contains("R3"));
    let o = bin(&["restrict", "Q7"]);
    assert_eq!(o.status.code(), Some(2));
}
