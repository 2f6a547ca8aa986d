//! End-to-end pipelines with pass/fail verdicts.
//!
//! Every experiment returns an [`ExperimentReport`]: a curve of
//! `(N, value, ln N, ratio)` rows, an optional growth fit, named sub-checks,
//! and a verdict computed only from thresholds in [`ExperimentConfig`].
//! Sweeps over `N` run on the rayon pool and are reassembled in input order.

mod config;
mod counterexample;
mod fit;
mod fresnel;
mod lower;
mod oracle;
mod upper;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use config::{ExperimentConfig, ExperimentKind, Tolerances};
pub use counterexample::{counterexample_value, run_counterexample_experiment, ReducedPhase};
pub use fit::{fit_log_exponent, FitResult, GrowthPoint, GrowthSeries, MIN_FIT_POINTS};
pub use fresnel::{fresnel_value, run_n4k2_fresnel_experiment};
pub use lower::{run_identity_check, run_lower_bound_experiment};
pub use oracle::{run_oracle_crosscheck, OracleComparison};
pub use upper::run_upper_bound_experiment;

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
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

    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// One row of a curve file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    #[serde(rename = "N")]
    pub n: f64,
    pub value: f64,
    #[serde(rename = "log_N")]
    pub log_n: f64,
    pub ratio: f64,
}

impl CurvePoint {
    pub fn new(n: f64, value: f64, ratio: f64) -> Self {
        Self { n, value, log_n: n.ln(), ratio }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub k: usize,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub curve: Vec<CurvePoint>,
    pub fit: Option<FitResult>,
    pub checks: Vec<Check>,
    /// Extra scalar outputs keyed by name.
    pub details: BTreeMap<String, f64>,
    pub verdict: Verdict,
}

impl ExperimentReport {
    pub fn series(&self) -> GrowthSeries {
        GrowthSeries {
            points: self.curve.iter().map(|p| GrowthPoint { n: p.n, value: p.value }).collect(),
        }
    }

    fn empty(kind: ExperimentKind, config: &ExperimentConfig) -> Self {
        Self {
            experiment: kind.name().to_string(),
            k: config.k,
            n: None,
            seed: config.seed,
            curve: vec![],
            fit: None,
            checks: vec![],
            details: BTreeMap::new(),
            verdict: Verdict::Fail,
        }
    }

    fn finish(mut self) -> Self {
        self.verdict = Verdict::from_bool(self.checks.iter().all(|c| c.passed));
        self
    }
}

/// Dispatches on `kind`.
pub fn run_experiment(kind: ExperimentKind, config: &ExperimentConfig) -> Result<ExperimentReport> {
    match kind {
        ExperimentKind::Identity => run_identity_check(config),
        ExperimentKind::LowerBound => run_lower_bound_experiment(config),
        ExperimentKind::UpperBound => run_upper_bound_experiment(config),
        ExperimentKind::Counterexample => run_counterexample_experiment(config),
        ExperimentKind::Fresnel => run_n4k2_fresnel_experiment(config),
        ExperimentKind::Oracle => run_oracle_crosscheck(config),
    }
}
