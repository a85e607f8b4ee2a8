//! Verification reports and the exit-code contract.

use serde::{Deserialize, Serialize};

use super::config::{Suite, SCHEMA_VERSION};
use crate::check::{CheckReport, Witness};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_VIOLATIONS: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A bracket missed its target ratio.
    Inconclusive,
    /// The suite does not apply to this algebra or state.
    Unsupported,
    /// Reported outcome that is not asserted (e.g. a violated conjectural inequality).
    Finding,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub suite: Suite,
    pub name: String,
    /// The statement being checked.
    pub anchor: String,
    pub instances: usize,
    /// `None` when nothing was measured or the value is not finite.
    pub max_violation: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    pub violations: usize,
    #[serde(default)]
    pub witnesses: Vec<Witness>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub details: serde_json::Value,
}

impl ReportEntry {
    pub fn from_check(suite: Suite, anchor: &str, check: &CheckReport) -> Self {
        ReportEntry {
            suite,
            name: check.name.clone(),
            anchor: anchor.to_string(),
            instances: check.instances,
            max_violation: finite(check.worst()),
            tolerance: check.tolerance,
            status: if check.passed() { Status::Pass } else { Status::Fail },
            violations: check.violations,
            witnesses: check.witnesses.clone(),
            details: serde_json::Value::Null,
        }
    }

    /// Same as [`from_check`](Self::from_check), but violations are reported as a finding.
    pub fn finding(suite: Suite, anchor: &str, check: &CheckReport) -> Self {
        let mut e = Self::from_check(suite, anchor, check);
        if e.status == Status::Fail {
            e.status = Status::Finding;
        }
        e
    }

    pub fn unsupported(suite: Suite, name: &str, anchor: &str, reason: impl Into<String>) -> Self {
        ReportEntry {
            suite,
            name: name.to_string(),
            anchor: anchor.to_string(),
            instances: 0,
            max_violation: None,
            tolerance: 0.0,
            status: Status::Unsupported,
            violations: 0,
            witnesses: Vec::new(),
            details: serde_json::json!({ "reason": reason.into() }),
        }
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = details;
        self
    }
}

pub(crate) fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusCounts {
    pub pass: usize,
    pub fail: usize,
    pub inconclusive: usize,
    pub unsupported: usize,
    pub finding: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub config_digest: String,
    pub seed: u64,
    pub algebra: String,
    pub state: String,
    /// Wall-clock time; the only field that varies between identical runs.
    pub runtime_seconds: f64,
    pub entries: Vec<ReportEntry>,
    pub counts: StatusCounts,
    pub exit_code: i32,
}

impl VerificationReport {
    pub fn new(config_digest: String, seed: u64, algebra: String, state: String, mut entries: Vec<ReportEntry>) -> Self {
        entries.sort_by(|a, b| (a.suite, &a.name).cmp(&(b.suite, &b.name)));
        let mut counts = StatusCounts::default();
        for e in &entries {
            match e.status {
                Status::Pass => counts.pass += 1,
                Status::Fail => counts.fail += 1,
                Status::Inconclusive => counts.inconclusive += 1,
                Status::Unsupported => counts.unsupported += 1,
                Status::Finding => counts.finding += 1,
            }
        }
        let exit_code = if counts.fail > 0 {
            EXIT_VIOLATIONS
        } else if counts.inconclusive > 0 {
            EXIT_INCONCLUSIVE
        } else {
            EXIT_PASS
        };
        VerificationReport {
            schema_version: SCHEMA_VERSION,
            config_digest,
            seed,
            algebra,
            state,
            runtime_seconds: 0.0,
            entries,
            counts,
            exit_code,
        }
    }

    pub fn entry(&self, suite: Suite, name: &str) -> Option<&ReportEntry> {
        self.entries.iter().find(|e| e.suite == suite && e.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Copy with the runtime zeroed, for determinism comparisons.
    pub fn without_runtime(&self) -> Self {
        VerificationReport { runtime_seconds: 0.0, ..self.clone() }
    }
}
