use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    pub witness: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, skipped: false, witness: witness.into() }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self { name: name.into(), passed: false, skipped: false, witness: witness.into() }
    }

    pub fn skipped(name: impl Into<String>, why: impl Into<String>) -> Self {
        Self { name: name.into(), passed: true, skipped: true, witness: why.into() }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        if ok {
            Self::pass(name, witness)
        } else {
            Self::fail(name, witness)
        }
    }
}

/// A list of checks produced by one verification routine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub title: String,
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.title)?;
        for c in &self.checks {
            let tag = match (c.passed, c.skipped) {
                (_, true) => "SKIP",
                (true, false) => "PASS",
                (false, false) => "FAIL",
            };
            writeln!(f, "  [{tag}] {}: {}", c.name, c.witness)?;
        }
        Ok(())
    }
}
