//! Violation reports.
//!
//! Checkers report violations instead of aborting: an empty report means every
//! checked law held, and each failure carries a concrete witness that can be
//! re-checked in isolation.

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A single violated instance of some law, with the data needed to replay it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    /// Which law was violated, e.g. `"assoc"`, `"pentagon"`, `"dagger"`.
    pub check: String,
    /// The witnessing instance, serialized in the CLI schema.
    pub witness: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn push(&mut self, check: impl Into<String>, witness: Value) {
        self.failures.push(Failure {
            check: check.into(),
            witness,
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.failures.extend(other.failures);
    }

    /// The CLI wire form: `{"status": "pass"|"fail", "failures": [...]}`.
    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "status": if self.pass() { "pass" } else { "fail" },
            "failures": self.failures,
        })
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pass() {
            write!(f, "pass")
        } else {
            writeln!(f, "fail ({} violations)", self.failures.len())?;
            for failure in &self.failures {
                writeln!(f, "  {}: {}", failure.check, failure.witness)?;
            }
            Ok(())
        }
    }
}
