use std::collections::BTreeMap;
use std::fmt::Write as _;

use opnorm_core::{AxiomReport, CheckReport, Status, Witness};
use serde::{Deserialize, Serialize};

use crate::config::SuiteConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualSummary {
    pub max: f64,
    pub mean: f64,
}

/// One named sub-check of a suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: String,
    pub status: Verdict,
    pub checks: usize,
    pub residual: ResidualSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedWitness {
    pub check: String,
    pub witness: Witness,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub index: usize,
    pub name: String,
    pub label: String,
    pub target: String,
    pub seed: u64,
    pub status: Verdict,
    pub checks: usize,
    pub residual: ResidualSummary,
    pub parts: Vec<CheckSummary>,
    pub witnesses: Vec<NamedWitness>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metrics: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub artifacts: Option<serde_json::Value>,
    pub wall_time_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: u32,
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub status: Verdict,
    pub suite_count: usize,
    pub config: SuiteConfig,
    pub suites: Vec<SuiteReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_time_ms: f64,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.status == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "opnorm {} seed={} suites={} status={:?}",
            self.version, self.seed, self.suite_count, self.status
        );
        for s in &self.suites {
            let _ = writeln!(
                out,
                "[{}] {:<10} {:<40} checks={:<7} max={:+.3e} mean={:+.3e} {:.1}ms",
                if s.status == Verdict::Pass { "PASS" } else { "FAIL" },
                s.name,
                s.target,
                s.checks,
                s.residual.max,
                s.residual.mean,
                s.wall_time_ms
            );
            for w in &s.witnesses {
                let _ = writeln!(out, "       witness ({}): {}", w.check, w.witness.detail);
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        out
    }
}

/// Accumulates sub-checks into a suite outcome.
#[derive(Debug, Default)]
pub struct SuiteOutcome {
    pub parts: Vec<CheckSummary>,
    pub witnesses: Vec<NamedWitness>,
    pub metrics: BTreeMap<String, f64>,
    pub notes: Vec<String>,
    pub artifacts: Option<serde_json::Value>,
}

impl SuiteOutcome {
    pub fn push(&mut self, check: &str, passed: bool, checks: usize, max: f64, mean: f64, witness: Option<Witness>) {
        self.parts.push(CheckSummary {
            check: check.to_string(),
            status: Verdict::from_bool(passed),
            checks,
            residual: ResidualSummary { max, mean },
        });
        if let Some(w) = witness {
            self.witnesses.push(NamedWitness {
                check: check.to_string(),
                witness: w,
            });
        }
    }

    pub fn push_check(&mut self, prefix: &str, r: &CheckReport) {
        let name = if prefix.is_empty() { r.name.clone() } else { format!("{prefix}.{}", r.name) };
        let witness = if r.passed { None } else { r.witness.clone() };
        self.push(&name, r.passed, r.checks, r.max_residual, r.mean_residual, witness);
        for (k, v) in &r.metrics {
            self.metrics.insert(format!("{name}.{k}"), *v);
        }
        self.notes.extend(r.notes.iter().cloned());
    }

    pub fn push_status(&mut self, name: &str, s: &Status) {
        self.push(name, s.passed(), s.checks(), s.max_residual(), s.mean_residual(), s.witness().cloned());
    }

    pub fn push_axioms(&mut self, r: &AxiomReport) {
        for (name, status) in r.axioms() {
            self.push_status(name, status);
        }
        self.notes.extend(r.notes.iter().cloned());
    }

    pub fn passed(&self) -> bool {
        self.parts.iter().all(|p| p.status == Verdict::Pass)
    }

    pub fn checks(&self) -> usize {
        self.parts.iter().map(|p| p.checks).sum()
    }

    /// Max of part maxima and the check-weighted mean of part means.
    pub fn residual(&self) -> ResidualSummary {
        let total = self.checks();
        let max = self.parts.iter().map(|p| p.residual.max).fold(f64::NEG_INFINITY, f64::max);
        let mean = if total == 0 {
            0.0
        } else {
            self.parts.iter().map(|p| p.residual.mean * p.checks as f64).sum::<f64>() / total as f64
        };
        ResidualSummary { max, mean }
    }
}

/// Removes every `wall_time_ms` field; what remains is deterministic.
pub fn strip_timing(v: &mut serde_json::Value) {
    match v {
        serde_json::Value::Object(map) => {
            map.remove("wall_time_ms");
            for (_, child) in map.iter_mut() {
                strip_timing(child);
            }
        }
        serde_json::Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
