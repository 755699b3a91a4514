//! Structured check results shared by every verification routine.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    Skip,
    /// An expected failure that did fail.
    XfailPass,
    /// An expected failure that unexpectedly held; counts as a failure.
    XfailUnexpectedPass,
}

impl Status {
    pub fn is_ok(self) -> bool {
        matches!(self, Status::Pass | Status::Skip | Status::XfailPass)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::XfailPass => "xfail-pass",
            Status::XfailUnexpectedPass => "xfail-unexpected-pass",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
pub struct Report {
    pub model: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cutoff: Option<u32>,
    pub checks: Vec<CheckRecord>,
    pub engine_version: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

/// What a single check found.
#[derive(Clone, Debug)]
pub enum Outcome {
    Holds(Option<String>),
    Violated(String),
    Skipped(String),
}

impl Outcome {
    pub fn holds() -> Outcome {
        Outcome::Holds(None)
    }

    /// `Holds` when `first` is `None`, otherwise the first counterexample.
    pub fn from_first(first: Option<String>) -> Outcome {
        match first {
            None => Outcome::holds(),
            Some(c) => Outcome::Violated(c),
        }
    }
}

impl Report {
    pub fn new(model: &str) -> Report {
        Report {
            model: model.to_string(),
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, r: CheckRecord) {
        self.checks.push(r);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.metadata.extend(other.metadata);
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.status.is_ok())
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.status.is_ok())
    }

    /// Plain-text rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut s = format!("model: {}\n", self.model);
        for (k, v) in &self.parameters {
            s += &format!("  {} = {}\n", k, v);
        }
        if let Some(n) = self.cutoff {
            s += &format!("  cutoff = {}\n", n);
        }
        for (k, v) in &self.metadata {
            s += &format!("  [{}] {}\n", k, v);
        }
        for c in &self.checks {
            s += &format!("{:<22} {:<48} {}\n", c.status.to_string(), c.id, c.anchor);
            if let Some(ce) = &c.counterexample {
                s += &format!("    counterexample: {}\n", ce);
            }
            if let Some(d) = &c.detail {
                s += &format!("    {}\n", d);
            }
        }
        let bad = self.failures().count();
        s += &format!("{} checks, {} not ok\n", self.checks.len(), bad);
        s
    }
}

/// Run one check and time it. Errors count as violations.
pub fn run_check<F>(id: &str, anchor: &str, expect_failure: bool, f: F) -> CheckRecord
where
    F: FnOnce() -> crate::Result<Outcome>,
{
    let t = Instant::now();
    let outcome = match f() {
        Ok(o) => o,
        Err(e) => Outcome::Violated(format!("error: {}", e)),
    };
    let elapsed_us = t.elapsed().as_micros() as u64;
    let (status, counterexample, detail) = match (outcome, expect_failure) {
        (Outcome::Holds(d), false) => (Status::Pass, None, d),
        (Outcome::Holds(d), true) => (
            Status::XfailUnexpectedPass,
            Some("expected a failure but the identity held".to_string()),
            d,
        ),
        (Outcome::Violated(c), false) => (Status::Fail, Some(c), None),
        (Outcome::Violated(c), true) => (Status::XfailPass, Some(c), None),
        (Outcome::Skipped(r), _) => (Status::Skip, None, Some(r)),
    };
    CheckRecord {
        id: id.to_string(),
        anchor: anchor.to_string(),
        status,
        counterexample,
        detail,
        elapsed_us,
    }
}
