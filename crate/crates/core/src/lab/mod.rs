//! Registered numerical checks of the offset results, each run on analytic
//! and synthesized surfaces.

pub mod algebra;
pub mod expressions;
mod cases;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SUITE_VERSION: &str = "1.0.0";

pub const DEFAULT_SEED: u64 = 20_240_601;

/// Closed registry of case ids, in report order.
pub const REGISTRY: [&str; 13] = [
    "lemma-2.1", "thm-3.1", "frame-5-7", "thm-4.1", "thm-5.1", "eq-25", "thm-5.2", "cor-5.3", "cor-5.4", "thm-6.1",
    "thm-6.2", "cor-6.3", "cor-6.4",
];

const ALIASES: [(&str, &str); 4] =
    [("frame-5", "frame-5-7"), ("frame-7", "frame-5-7"), ("thm-5.1-i", "thm-5.1"), ("thm-5.1-ii", "thm-5.1")];

/// Canonical id for a registered id or alias.
pub fn resolve_id(id: &str) -> Option<&'static str> {
    REGISTRY
        .iter()
        .copied()
        .find(|r| *r == id)
        .or_else(|| ALIASES.iter().find(|(a, _)| *a == id).map(|(_, r)| *r))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabError {
    #[error("unknown theorem case id `{0}`")]
    UnknownId(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub id: String,
    pub surface_source: String,
    pub params: BTreeMap<String, f64>,
    pub seed: u64,
}

impl TheoremCase {
    /// The registered case with its default parameters.
    pub fn new(id: &str, seed: u64) -> Result<TheoremCase, LabError> {
        let id = resolve_id(id).ok_or_else(|| LabError::UnknownId(id.to_string()))?;
        let (surface_source, params) = cases::defaults(id);
        let params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Ok(TheoremCase { id: id.to_string(), surface_source: surface_source.to_string(), params, seed })
    }

    pub(crate) fn param(&self, name: &str) -> f64 {
        self.params[name]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// `AtMost`: pass iff `value <= bound`. `AtLeast`: pass iff `value >= bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    AtMost,
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
    pub mean: f64,
    pub argmax_s: Option<f64>,
    pub bound: f64,
    pub samples: usize,
    pub passed: bool,
}

impl CheckResult {
    pub fn at_most(name: &str, value: f64, bound: f64) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            kind: BoundKind::AtMost,
            value,
            mean: value,
            argmax_s: None,
            bound,
            samples: 1,
            passed: value <= bound,
        }
    }

    pub fn at_least(name: &str, value: f64, bound: f64) -> CheckResult {
        CheckResult { kind: BoundKind::AtLeast, passed: value >= bound, ..CheckResult::at_most(name, value, bound) }
    }

    /// Max, mean and location of `|residual|` over `(s, residual)` samples.
    pub fn over_grid(name: &str, values: &[(f64, f64)], bound: f64) -> CheckResult {
        let mut worst = (f64::NAN, -1.0f64);
        let mut sum = 0.0;
        let mut finite = true;
        for &(s, r) in values {
            let r = r.abs();
            finite &= r.is_finite();
            sum += r;
            if !(r <= worst.1) {
                worst = (s, r);
            }
        }
        let value = if finite { worst.1.max(0.0) } else { f64::INFINITY };
        CheckResult {
            name: name.to_string(),
            kind: BoundKind::AtMost,
            value,
            mean: if values.is_empty() { 0.0 } else { sum / values.len() as f64 },
            argmax_s: (!values.is_empty()).then_some(worst.0),
            bound,
            samples: values.len(),
            passed: finite && value <= bound && !values.is_empty(),
        }
    }

    fn ratio(&self) -> f64 {
        match self.kind {
            BoundKind::AtLeast => 0.0,
            BoundKind::AtMost if self.bound > 0.0 => self.value / self.bound,
            // exact counts only headline a report when nothing else does
            BoundKind::AtMost if self.value == 0.0 => -1.0,
            BoundKind::AtMost => f64::INFINITY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub id: String,
    pub verdict: Verdict,
    /// Residual of the check closest to (or furthest beyond) its tolerance.
    pub max_residual: f64,
    pub mean_residual: f64,
    pub argmax_s: Option<f64>,
    pub tolerance: f64,
    pub excluded_intervals: Vec<[f64; 2]>,
    pub surface_source: String,
    pub params: BTreeMap<String, f64>,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub error: Option<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn assemble(case: &TheoremCase, outcome: Result<cases::Outcome, String>) -> TheoremReport {
        let mut report = TheoremReport {
            id: case.id.clone(),
            verdict: Verdict::Fail,
            max_residual: f64::INFINITY,
            mean_residual: f64::INFINITY,
            argmax_s: None,
            tolerance: 0.0,
            excluded_intervals: Vec::new(),
            surface_source: case.surface_source.clone(),
            params: case.params.clone(),
            seed: case.seed,
            checks: Vec::new(),
            error: None,
        };
        match outcome {
            Err(e) => report.error = Some(e),
            Ok(out) => {
                let worst = out.checks.iter().filter(|c| c.kind == BoundKind::AtMost).max_by(|a, b| a.ratio().total_cmp(&b.ratio()));
                if let Some(w) = worst {
                    report.max_residual = w.value;
                    report.mean_residual = w.mean;
                    report.argmax_s = w.argmax_s;
                    report.tolerance = w.bound;
                }
                let ok = !out.checks.is_empty() && out.checks.iter().all(|c| c.passed);
                report.verdict = if ok { Verdict::Pass } else { Verdict::Fail };
                report.excluded_intervals = out.excluded;
                report.checks = out.checks;
            }
        }
        report
    }
}

pub fn run_case(case: &TheoremCase) -> TheoremReport {
    let outcome = cases::run(case);
    TheoremReport::assemble(case, outcome)
}

/// Runs the registered cases (all, or those named in `filter`) in registry order.
///
/// Unknown ids are rejected before anything runs.
pub fn run_suite(filter: Option<&[String]>, seed: u64) -> Result<Vec<TheoremReport>, LabError> {
    let ids: Vec<&'static str> = match filter {
        None => REGISTRY.to_vec(),
        Some(list) => {
            let mut wanted = Vec::new();
            for id in list {
                let r = resolve_id(id).ok_or_else(|| LabError::UnknownId(id.clone()))?;
                if !wanted.contains(&r) {
                    wanted.push(r);
                }
            }
            REGISTRY.iter().copied().filter(|r| wanted.contains(r)).collect()
        }
    };
    let cases: Vec<TheoremCase> = ids.iter().map(|id| TheoremCase::new(id, seed)).collect::<Result<_, _>>()?;
    Ok(cases.par_iter().map(run_case).collect())
}

#[cfg(test)]
mod tests;
