//! Machine-readable run reports.

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::rootdata::CheckResult;

/// One verified property.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: Value,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Check {
    /// Passes iff `expected == actual`; the counterexample repeats both.
    pub fn equal(name: impl Into<String>, inputs: Value, expected: Value, actual: Value) -> Self {
        let pass = expected == actual;
        let counterexample = (!pass).then(|| json!({ "expected": expected.clone(), "actual": actual.clone() }));
        Check { name: name.into(), inputs, expected, actual, pass, counterexample }
    }

    /// A batch of trials, expected to have no failures.
    pub fn trials(name: impl Into<String>, inputs: Value, trials: usize, failures: Vec<String>) -> Self {
        let pass = failures.is_empty();
        let counterexample = (!pass).then(|| json!(failures.iter().take(5).collect::<Vec<_>>()));
        Check {
            name: name.into(),
            inputs,
            expected: json!({ "trials": trials, "failures": 0 }),
            actual: json!({ "trials": trials, "failures": failures.len() }),
            pass,
            counterexample,
        }
    }

    pub fn from_result(prefix: &str, inputs: Value, r: &CheckResult) -> Self {
        let name = if prefix.is_empty() { r.name.clone() } else { format!("{prefix}/{}", r.name) };
        Check {
            name,
            inputs,
            expected: json!("pass"),
            actual: json!(if r.passed { "pass" } else { "fail" }),
            pass: r.passed,
            counterexample: (!r.passed).then(|| json!(r.detail.clone().unwrap_or_else(|| "no detail".into()))),
        }
    }

    pub fn from_results(prefix: &str, inputs: &Value, rs: &[CheckResult]) -> Vec<Self> {
        rs.iter().map(|r| Self::from_result(prefix, inputs.clone(), r)).collect()
    }

    /// A step that could not run at all.
    pub fn error(name: impl Into<String>, inputs: Value, err: impl std::fmt::Display) -> Self {
        Check {
            name: name.into(),
            inputs,
            expected: json!("pass"),
            actual: json!("error"),
            pass: false,
            counterexample: Some(json!(err.to_string())),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub input_digest: String,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl RunReport {
    pub fn new(command: Vec<String>, input: &[u8], seed: u64, checks: Vec<Check>, notes: Vec<String>, result: Value) -> Self {
        let passed = checks.iter().all(|c| c.pass);
        RunReport { command, input_digest: digest(input), seed, passed, checks, notes, result, wall_time_ms: None }
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Hex SHA-256.
pub fn digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_checks_carry_counterexamples() {
        let c = Check::equal("x", json!(null), json!(1), json!(2));
        assert!(!c.pass && c.counterexample.is_some());
        let c = Check::trials("y", json!(null), 10, vec![]);
        assert!(c.pass && c.counterexample.is_none());
        let r = CheckResult::new("z", vec!["bad".into()]);
        assert_eq!(Check::from_result("p", json!(null), &r).counterexample, Some(json!("bad")));
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(digest(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }
}
