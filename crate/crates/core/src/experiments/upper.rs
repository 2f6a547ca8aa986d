use rayon::prelude::*;

use super::{fit_log_exponent, Check, CurvePoint, ExperimentConfig, ExperimentKind, ExperimentReport, GrowthSeries};
use crate::error::{Error, Result};
use crate::geometry::support_polytope;
use crate::integrate::complement_integral;

/// `|∫_{D \ cube}|` at `x = 0` across the sweep; the fitted exponent of
/// `(ln N)` must stay at most `k − 2 + upper_slack`.
pub fn run_upper_bound_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let kind = ExperimentKind::UpperBound;
    config.validate(kind)?;
    let k = config.k;
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidInput(format!("upper-bound experiment needs k in {{2, 3}}, got {k}")));
    }
    let alphas = config.alpha_matrix(config.n_or_default())?;
    let n = alphas.n();
    let list = config.sweep(kind);
    let values = list
        .par_iter()
        .map(|&cut| complement_integral(k, &support_polytope(0.0, &alphas, cut)?, &config.quad).map(f64::abs))
        .collect::<Result<Vec<f64>>>()?;
    let mut out = ExperimentReport::empty(kind, config);
    out.n = Some(n);
    out.curve = list
        .iter()
        .zip(&values)
        .map(|(&cut, &v)| CurvePoint::new(cut, v, v / cut.ln().powi(k as i32 - 2)))
        .collect();
    let series = GrowthSeries::from_pairs(&list.iter().copied().zip(values.iter().copied()).collect::<Vec<_>>())?;
    let fit = fit_log_exponent(&series, config.fit_min_n)?;
    let limit = k as f64 - 2.0 + config.tolerances.upper_slack;
    out.checks.push(Check::new(
        "exponent ceiling",
        fit.exponent <= limit,
        format!("exponent {:.4} vs ceiling {limit}", fit.exponent),
    ));
    out.fit = Some(fit);
    Ok(out.finish())
}
