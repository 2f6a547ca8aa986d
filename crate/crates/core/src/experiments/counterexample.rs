use rayon::prelude::*;

use super::{fit_log_exponent, Check, CurvePoint, ExperimentConfig, ExperimentKind, ExperimentReport, GrowthSeries};
use crate::error::{Error, Result};
use crate::geometry::support_polytope;
use crate::integrate::{quadratic_sin_part, sinprod_over_polytope, QuadSpec};
use crate::phase::{solve_phase, solve_phase_n4k2, AlphaMatrix};

/// What survives of the phase after the constrained monomials vanish.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReducedPhase {
    /// Only `t₁⋯t_k` (and the constant `x^k` term).
    Mixed,
    /// `alpha_coef · t₁² ± t₁t₂`; `reflected` means the minus sign.
    Fresnel { alpha_coef: f64, reflected: bool },
}

/// `(1/π^k) · |∫_{D_x} sin(phase)/(t₁⋯t_k) dt|` with `D_x` the support
/// polytope for cutoff `cutoff`.
pub fn counterexample_value(
    alphas: &AlphaMatrix,
    phase: ReducedPhase,
    x: f64,
    cutoff: f64,
    spec: &QuadSpec,
) -> Result<f64> {
    let k = alphas.k();
    let poly = support_polytope(x, alphas, cutoff)?;
    let sin_part = match phase {
        ReducedPhase::Mixed => sinprod_over_polytope(&poly, spec)?,
        // t₂ ↦ −t₂ turns −t₁t₂ into +t₁t₂ and flips the sign of dt₂/t₂.
        ReducedPhase::Fresnel { alpha_coef, reflected: true } => -quadratic_sin_part(&poly.reflected(1), alpha_coef, spec)?,
        ReducedPhase::Fresnel { alpha_coef, reflected: false } => quadratic_sin_part(&poly, alpha_coef, spec)?,
    };
    Ok(sin_part.abs() / std::f64::consts::PI.powi(k as i32))
}

/// Solves the phase for the configured `(k, n)` and reports the reduction.
pub(crate) fn reduced_phase(alphas: &AlphaMatrix, config: &ExperimentConfig) -> Result<ReducedPhase> {
    if alphas.k() == 2 && alphas.n() == 4 {
        let p = solve_phase_n4k2(alphas, config.tol_phase)?;
        return Ok(ReducedPhase::Fresnel { alpha_coef: p.alpha_coef, reflected: p.reflected });
    }
    let p = solve_phase(alphas, config.tol_phase)?;
    if !p.residual_within(config.tol_phase) {
        return Err(Error::ToleranceNotMet { tol: config.tol_phase, estimate: p.residual, max_subdivisions: 0 });
    }
    Ok(ReducedPhase::Mixed)
}

/// Sweep of [`counterexample_value`] over `N` and the window points; the
/// series keeps the smallest value over the window at each `N`.
pub fn run_counterexample_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let kind = ExperimentKind::Counterexample;
    config.validate(kind)?;
    let k = config.k;
    if !(2..=3).contains(&k) {
        return Err(Error::InvalidInput(format!("counterexample needs k in {{2, 3}}, got {k}")));
    }
    let alphas = config.alpha_matrix(config.n_or_default())?;
    let n = alphas.n();
    if k == 3 && n < 19 || k == 2 && n < 4 {
        return Err(Error::InvalidInput(format!("n = {n} is too small for k = {k}")));
    }
    let phase = reduced_phase(&alphas, config)?;
    let list = config.sweep(kind);
    let jobs: Vec<(f64, f64)> =
        list.iter().flat_map(|&cut| config.x_points.iter().map(move |&frac| (cut, frac * cut))).collect();
    let values = jobs
        .par_iter()
        .map(|&(cut, x)| counterexample_value(&alphas, phase, x, cut, &config.quad))
        .collect::<Result<Vec<f64>>>()?;
    let per_n = config.x_points.len();
    let minima: Vec<f64> =
        values.chunks(per_n).map(|c| c.iter().copied().fold(f64::INFINITY, f64::min)).collect();

    let mut out = ExperimentReport::empty(kind, config);
    out.n = Some(n);
    out.curve = list
        .iter()
        .zip(&minima)
        .map(|(&cut, &v)| CurvePoint::new(cut, v, v / cut.ln().powi(k as i32 - 1)))
        .collect();
    for (&(cut, x), &v) in jobs.iter().zip(&values) {
        out.details.insert(format!("value_N{cut}_x{x}"), v);
    }
    if let ReducedPhase::Fresnel { alpha_coef, .. } = phase {
        out.details.insert("alpha_coef".into(), alpha_coef);
    }
    let positive = values.iter().all(|&v| v > 0.0);
    out.checks.push(Check::new("values positive", positive, format!("smallest {:.4e}", minima.iter().copied().fold(f64::INFINITY, f64::min))));
    if !positive {
        return Ok(out.finish());
    }
    let series = GrowthSeries::from_pairs(&list.iter().copied().zip(minima.iter().copied()).collect::<Vec<_>>())?;
    let fit = fit_log_exponent(&series, config.fit_min_n)?;
    let tol = &config.tolerances;
    let target = k as f64 - 1.0;
    out.checks.push(Check::new(
        "exponent band",
        (fit.exponent - target).abs() <= tol.counterexample_band,
        format!("exponent {:.4} vs {target} ± {}", fit.exponent, tol.counterexample_band),
    ));
    out.checks.push(Check::new(
        "fit quality",
        fit.r_squared >= tol.counterexample_min_r2,
        format!("r² {:.4} vs minimum {}", fit.r_squared, tol.counterexample_min_r2),
    ));
    out.fit = Some(fit);
    Ok(out.finish())
}
