use rayon::prelude::*;

use super::{fit_log_exponent, Check, CurvePoint, ExperimentConfig, ExperimentKind, ExperimentReport, GrowthSeries};
use crate::error::{Error, Result};
use crate::geometry::SupportPolytope;
use crate::integrate::sinprod_by_slicing;
use crate::osc1d::{brute_force_cube_integral, cube_integral};

/// Cube integrals over the sweep; exponent of `(ln N)` must be near `k − 1`.
pub fn run_lower_bound_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let kind = ExperimentKind::LowerBound;
    config.validate(kind)?;
    let k = config.k;
    if k > 4 {
        return Err(Error::InvalidInput(format!("lower-bound experiment needs k <= 4, got {k}")));
    }
    let list = config.sweep(kind);
    let values = list.par_iter().map(|&n| cube_integral(k as u32, n)).collect::<Result<Vec<f64>>>()?;
    let mut out = ExperimentReport::empty(kind, config);
    out.curve = list
        .iter()
        .zip(&values)
        .map(|(&n, &v)| CurvePoint::new(n, v, v / n.ln().powi(k as i32 - 1)))
        .collect();
    let series = GrowthSeries::from_pairs(&list.iter().copied().zip(values.iter().copied()).collect::<Vec<_>>())?;
    let fit = fit_log_exponent(&series, config.fit_min_n)?;
    let band = config.tolerances.lower_band;
    let target = k as f64 - 1.0;
    let smallest = values.iter().copied().fold(f64::INFINITY, f64::min);
    out.checks.push(Check::new("values positive", smallest > 0.0, format!("smallest {smallest:.6}")));
    out.checks.push(Check::new(
        "exponent band",
        (fit.exponent - target).abs() <= band,
        format!("exponent {:.4} vs {target} ± {band}", fit.exponent),
    ));
    if k == 1 {
        let last = *values.last().expect("non-empty sweep");
        out.details.insert("gap_to_pi".into(), last - std::f64::consts::PI);
    }
    out.fit = Some(fit);
    Ok(out.finish())
}

/// Midpoint resolution giving twice the minimum sampling density.
fn identity_resolution(k: usize, n: f64) -> usize {
    (8.0 * n.powi(k as i32)).ceil() as usize
}

/// Reduction to one dimension against a tensor rule, and against slicing.
pub fn run_identity_check(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let kind = ExperimentKind::Identity;
    config.validate(kind)?;
    let k = config.k;
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidInput(format!("identity check needs k in 1..=3, got {k}")));
    }
    let list = config.sweep(kind);
    let rows = list
        .par_iter()
        .map(|&n| -> Result<(f64, f64, Option<f64>)> {
            let reduced = cube_integral(k as u32, n)?;
            let brute = brute_force_cube_integral(k as u32, n, identity_resolution(k, n))?;
            let sliced = if k >= 2 {
                Some(sinprod_by_slicing(&SupportPolytope::cube(k, n)?, &config.quad)?)
            } else {
                None
            };
            Ok((reduced, brute, sliced))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = ExperimentReport::empty(kind, config);
    let tol = config.tolerances.identity_rel;
    for (&n, &(reduced, brute, sliced)) in list.iter().zip(&rows) {
        out.curve.push(CurvePoint::new(n, reduced, reduced / brute));
        let gap = (reduced - brute).abs() / brute.abs();
        out.checks.push(Check::new(
            &format!("tensor rule N={n}"),
            gap <= tol,
            format!("reduced {reduced:.8}, tensor {brute:.8}, relative gap {gap:.2e}"),
        ));
        if let Some(s) = sliced {
            let gap = (reduced - s).abs() / s.abs();
            out.details.insert(format!("sliced_N{n}"), s);
            out.checks.push(Check::new(
                &format!("slicing N={n}"),
                gap <= tol,
                format!("reduced {reduced:.8}, sliced {s:.8}, relative gap {gap:.2e}"),
            ));
        }
    }
    Ok(out.finish())
}
