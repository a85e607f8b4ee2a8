//! Violation accounting shared by the property checks.

use serde::{Deserialize, Serialize};

use crate::densemat::C64;
use crate::jordan::JordanElement;

/// How many witnesses a report keeps (lowest sample indices first).
pub const MAX_WITNESSES: usize = 5;

/// Recorded instance of a violated inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: u64,
    /// Coordinates of the inputs as `[re, im]` pairs.
    pub elements: Vec<Vec<[f64; 2]>>,
    pub lhs: f64,
    pub rhs: f64,
}

pub fn coords_pairs(x: &JordanElement) -> Vec<[f64; 2]> {
    x.coords().iter().map(|z| [z.re, z.im]).collect()
}

pub fn pairs_to_coords(pairs: &[[f64; 2]]) -> Vec<C64> {
    pairs.iter().map(|p| C64::new(p[0], p[1])).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub instances: usize,
    /// Largest observed `lhs − rhs` (or residual); `−∞` is reported as the smallest finite value seen.
    pub max_violation: f64,
    pub tolerance: f64,
    pub violations: usize,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, tolerance: f64) -> Self {
        CheckReport {
            name: name.into(),
            instances: 0,
            max_violation: f64::NEG_INFINITY,
            tolerance,
            violations: 0,
            witnesses: Vec::new(),
        }
    }

    /// Records one instance; `witness` is only built for violations.
    pub fn record(&mut self, index: u64, violation: f64, witness: impl FnOnce() -> Witness) {
        self.instances += 1;
        if violation.is_nan() || self.max_violation.is_nan() {
            self.max_violation = f64::NAN;
        } else if violation > self.max_violation {
            self.max_violation = violation;
        }
        if !(violation <= self.tolerance) {
            self.violations += 1;
            if self.witnesses.len() < MAX_WITNESSES {
                let mut w = witness();
                w.index = index;
                self.witnesses.push(w);
            }
        }
    }

    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.instances += other.instances;
        self.violations += other.violations;
        if other.max_violation.is_nan() || other.max_violation > self.max_violation {
            self.max_violation = other.max_violation;
        }
        self.witnesses.extend(other.witnesses);
        self.witnesses.sort_by_key(|w| w.index);
        self.witnesses.truncate(MAX_WITNESSES);
        self
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && !self.max_violation.is_nan()
    }

    /// `max_violation` with the empty case mapped to zero.
    pub fn worst(&self) -> f64 {
        if self.instances == 0 {
            0.0
        } else {
            self.max_violation
        }
    }
}

/// Folds per-sample outcomes in index order so the result is schedule independent.
pub fn collect_report(name: &str, tolerance: f64, outcomes: Vec<(u64, f64, Option<Witness>)>) -> CheckReport {
    let mut report = CheckReport::new(name, tolerance);
    let mut sorted = outcomes;
    sorted.sort_by_key(|o| o.0);
    for (index, violation, witness) in sorted {
        report.record(index, violation, || witness.unwrap_or(Witness { index, elements: Vec::new(), lhs: violation, rhs: 0.0 }));
    }
    report
}
