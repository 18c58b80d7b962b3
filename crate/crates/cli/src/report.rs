//! Check records and reports.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The statement being checked.
    pub anchor: String,
    pub inputs_digest: String,
    pub status: Status,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    pub seed: u64,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.summary.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if let Some(d) = &self.input_digest {
            writeln!(out, "input: {d}").unwrap();
        }
        writeln!(out, "seed: {}", self.seed).unwrap();
        for c in &self.checks {
            writeln!(out, "{} {} ({}) {}", c.status.label(), c.id, c.anchor, c.witness).unwrap();
        }
        let s = &self.summary;
        writeln!(out, "summary: {} {}/{} passed", s.status.label(), s.passed, s.total).unwrap();
        out
    }
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

pub fn digest_value(v: &Value) -> String {
    digest_bytes(&serde_json::to_vec(v).expect("json value serializes"))
}

/// The result of one check: pass or fail plus the values that show it.
pub struct Outcome {
    pub pass: bool,
    pub witness: Value,
}

impl Outcome {
    pub fn new(pass: bool, witness: Value) -> Self {
        Self { pass, witness }
    }
}

/// Collects check records in order, skipping ids rejected by the filter.
pub struct Recorder {
    filter: Option<glob::Pattern>,
    checks: Vec<CheckRecord>,
}

impl Recorder {
    pub fn new(filter: Option<glob::Pattern>) -> Self {
        Self { filter, checks: Vec::new() }
    }

    pub fn wants(&self, id: &str) -> bool {
        self.filter.as_ref().is_none_or(|p| p.matches(id))
    }

    /// Runs `f` when `id` passes the filter. An `Err` is recorded as a failure
    /// whose witness is the error message.
    pub fn check<F>(&mut self, id: impl Into<String>, anchor: &str, inputs: Value, f: F)
    where
        F: FnOnce() -> Result<Outcome, String>,
    {
        let id = id.into();
        if !self.wants(&id) {
            return;
        }
        let (status, witness) = match f() {
            Ok(o) => (if o.pass { Status::Pass } else { Status::Fail }, o.witness),
            Err(e) => (Status::Fail, json!({ "error": e })),
        };
        self.checks.push(CheckRecord {
            id,
            anchor: anchor.to_string(),
            inputs_digest: digest_value(&inputs),
            status,
            witness,
        });
    }

    pub fn finish(self, command: &str, input_digest: Option<String>, seed: u64) -> Report {
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        let total = self.checks.len();
        Report {
            command: command.to_string(),
            input_digest,
            seed,
            summary: Summary {
                total,
                passed,
                failed: total - passed,
                status: if passed == total { Status::Pass } else { Status::Fail },
            },
            checks: self.checks,
        }
    }
}
