use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use skein_core::report::{Check, CheckReport};

use crate::config::RunConfig;

/// Bumped whenever the structured layout changes.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Section {
    pub suite: String,
    pub title: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub failed: usize,
    pub skipped: usize,
}

/// The structured report. Wall-clock timings are kept out of it so that
/// equal configurations give equal documents; see [`Timings`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub artifact: String,
    pub params: RunConfig,
    pub sections: Vec<Section>,
    pub summary: Summary,
    pub passed: bool,
}

/// Elapsed wall-clock time per suite.
pub type Timings = Vec<(String, Duration)>;

impl Report {
    pub fn new(params: RunConfig, sections: Vec<(String, CheckReport)>) -> Self {
        let sections: Vec<Section> =
            sections.into_iter().map(|(suite, r)| Section { suite, title: r.title, checks: r.checks }).collect();
        let all = sections.iter().flat_map(|s| &s.checks);
        let summary = Summary {
            checks: all.clone().count(),
            failed: all.clone().filter(|c| !c.passed).count(),
            skipped: all.filter(|c| c.skipped).count(),
        };
        Self {
            schema: REPORT_SCHEMA,
            artifact: format!("skein {}", env!("CARGO_PKG_VERSION")),
            passed: summary.failed == 0,
            params,
            sections,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, timings: Option<&Timings>) -> String {
        let mut out = String::new();
        for s in &self.sections {
            let _ = writeln!(out, "[{}] {}", s.suite, s.title);
            for c in &s.checks {
                let tag = match (c.passed, c.skipped) {
                    (_, true) => "SKIP",
                    (true, false) => "PASS",
                    (false, false) => "FAIL",
                };
                let _ = writeln!(out, "  [{tag}] {}: {}", c.name, c.witness);
            }
        }
        for (suite, d) in timings.into_iter().flatten() {
            let _ = writeln!(out, "time {suite}: {:.2}s", d.as_secs_f64());
        }
        let _ = writeln!(
            out,
            "{}: {} checks, {} failed, {} skipped",
            if self.passed { "PASS" } else { "FAIL" },
            self.summary.checks,
            self.summary.failed,
            self.summary.skipped
        );
        out
    }
}
