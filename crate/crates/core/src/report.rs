//! Structured pass/fail results.
//!
//! Reports never claim universal validity: a pass means "no violation on the
//! stated samples", and every failure carries a concrete witness.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::matrix::{opt_complex_pairs, CVector, C64};

/// Inputs that reproduce a violation.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    /// Sample index within the check that produced it.
    pub sample: usize,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_complex_pairs")]
    pub x: Option<CVector>,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_complex_pairs")]
    pub y: Option<CVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalar: Option<[f64; 2]>,
    /// Test vector (Hilbert) or test function (on `K`) exposing the violation.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_complex_pairs")]
    pub vector: Option<CVector>,
    pub detail: String,
}

impl Witness {
    pub fn new(sample: usize, detail: impl Into<String>) -> Self {
        Self {
            sample,
            detail: detail.into(),
            ..Default::default()
        }
    }

    pub fn with_x(mut self, x: &[C64]) -> Self {
        self.x = Some(x.to_vec());
        self
    }

    pub fn with_y(mut self, y: &[C64]) -> Self {
        self.y = Some(y.to_vec());
        self
    }

    pub fn with_scalar(mut self, s: C64) -> Self {
        self.scalar = Some([s.re, s.im]);
        self
    }

    pub fn with_vector(mut self, v: &[C64]) -> Self {
        self.vector = Some(v.to_vec());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Status {
    Pass {
        checks: usize,
        max_residual: f64,
        mean_residual: f64,
    },
    Fail {
        checks: usize,
        /// Residual of the first violation.
        residual: f64,
        max_residual: f64,
        mean_residual: f64,
        witness: Witness,
    },
}

impl Status {
    pub fn passed(&self) -> bool {
        matches!(self, Status::Pass { .. })
    }

    pub fn checks(&self) -> usize {
        match self {
            Status::Pass { checks, .. } | Status::Fail { checks, .. } => *checks,
        }
    }

    pub fn max_residual(&self) -> f64 {
        match self {
            Status::Pass { max_residual, .. } | Status::Fail { max_residual, .. } => *max_residual,
        }
    }

    pub fn mean_residual(&self) -> f64 {
        match self {
            Status::Pass { mean_residual, .. } | Status::Fail { mean_residual, .. } => *mean_residual,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Status::Fail { witness, .. } => Some(witness),
            Status::Pass { .. } => None,
        }
    }
}

/// Per-axiom outcome of an operator-valued norm check.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub descriptor: String,
    pub positivity: Status,
    pub triangle: Status,
    pub homogeneity: Status,
    pub definiteness: Status,
    pub samples: usize,
    pub pairs: usize,
    pub seed: u64,
    pub tol: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.axioms().iter().all(|(_, s)| s.passed())
    }

    pub fn axioms(&self) -> [(&'static str, &Status); 4] {
        [
            ("positivity", &self.positivity),
            ("triangle", &self.triangle),
            ("homogeneity", &self.homogeneity),
            ("definiteness", &self.definiteness),
        ]
    }

    pub fn failures(&self) -> Vec<(&'static str, &Witness)> {
        self.axioms()
            .into_iter()
            .filter_map(|(n, s)| s.witness().map(|w| (n, w)))
            .collect()
    }
}

/// Result of a family of scalar inequality or equality checks.
///
/// Each item records a `residual` and the `bound` it must not exceed; the
/// margin `bound - residual` is tracked so that "worst slack" is available.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    /// Smallest `bound - residual` seen.
    pub min_margin: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            checks: 0,
            failures: 0,
            max_residual: f64::NEG_INFINITY,
            mean_residual: 0.0,
            min_margin: f64::INFINITY,
            witness: None,
            metrics: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// Records one item; `witness` is built only for the first failure.
    pub fn record(&mut self, residual: f64, bound: f64, witness: impl FnOnce() -> Witness) {
        self.checks += 1;
        let n = self.checks as f64;
        self.mean_residual += (residual - self.mean_residual) / n;
        self.max_residual = self.max_residual.max(residual);
        self.min_margin = self.min_margin.min(bound - residual);
        let ok = residual <= bound;
        if !ok {
            self.failures += 1;
            self.passed = false;
            if self.witness.is_none() {
                self.witness = Some(witness());
            }
        }
    }

    pub fn metric(&mut self, key: impl Into<String>, value: f64) {
        self.metrics.insert(key.into(), value);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Folds another report's items into this one.
    pub fn absorb(&mut self, other: &CheckReport) {
        if other.checks == 0 {
            return;
        }
        let total = (self.checks + other.checks) as f64;
        self.mean_residual = (self.mean_residual * self.checks as f64
            + other.mean_residual * other.checks as f64)
            / total;
        self.checks += other.checks;
        self.failures += other.failures;
        self.max_residual = self.max_residual.max(other.max_residual);
        self.min_margin = self.min_margin.min(other.min_margin);
        self.passed &= other.passed;
        if self.witness.is_none() {
            self.witness = other.witness.clone();
        }
    }

    pub fn fail_with(&mut self, witness: Witness) {
        self.passed = false;
        self.failures += 1;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }
}

/// Builds a [`Status`] from a stream of `(residual, bound)` items.
#[derive(Debug, Default)]
pub(crate) struct StatusBuilder {
    checks: usize,
    max_residual: f64,
    sum: f64,
    fail: Option<(f64, Witness)>,
}

impl StatusBuilder {
    pub fn record(&mut self, residual: f64, bound: f64, witness: impl FnOnce() -> Witness) {
        self.checks += 1;
        if self.checks == 1 {
            self.max_residual = residual;
        } else {
            self.max_residual = self.max_residual.max(residual);
        }
        self.sum += residual;
        if residual > bound && self.fail.is_none() {
            self.fail = Some((residual, witness()));
        }
    }

    pub fn finish(self) -> Status {
        let mean_residual = if self.checks == 0 { 0.0 } else { self.sum / self.checks as f64 };
        match self.fail {
            Some((residual, witness)) => Status::Fail {
                checks: self.checks,
                residual,
                max_residual: self.max_residual,
                mean_residual,
                witness,
            },
            None => Status::Pass {
                checks: self.checks,
                max_residual: self.max_residual,
                mean_residual,
            },
        }
    }
}
