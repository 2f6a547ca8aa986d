use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;

use super::{fit_log_exponent, Check, CurvePoint, ExperimentConfig, ExperimentKind, ExperimentReport, GrowthSeries};
use crate::error::{Error, Result};
use crate::osc1d::{cisi, sine_integral};
use crate::phase::solve_phase_n4k2;
use crate::quad::adaptive_rel;

/// Beyond this `u`, `Si(|β|u)` is replaced by `π/2` and the rest is closed form.
const NUMERIC_LIMIT: f64 = 1e3;

/// `(1/π²) |∫_{[−Λ,Λ]²} e^{i(α t² + β t s)} dt/t ds/s|` with the inner
/// principal value in closed form:
/// `(4/π²) |∫₀^{Λ²} e^{iαu²/Λ²} Si(|β|u)/u du|`.
pub fn fresnel_value(alpha: f64, beta: f64, lambda: f64) -> Result<f64> {
    if !(alpha > 0.0) || beta == 0.0 || !beta.is_finite() || !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!(
            "need alpha > 0, beta != 0 and lambda > 0, got ({alpha}, {beta}, {lambda})"
        )));
    }
    let b = beta.abs();
    let l2 = lambda * lambda;
    let top = l2.min(NUMERIC_LIMIT);
    let rate = alpha / l2;

    let mut breaks = vec![0.0];
    let mut g = 1.0 / b;
    while g < top {
        breaks.push(g);
        g *= 2.0;
    }
    let periods = (rate * top * top / TAU).floor() as usize;
    if periods > 1_000_000 {
        return Err(Error::ResolutionTooCoarse { spacing: top / periods as f64, required: top * 1e-6 });
    }
    breaks.extend((1..=periods).map(|j| (TAU * j as f64 / rate).sqrt()).filter(|&u| u < top));
    breaks.push(top);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    let f = |u: f64| {
        let si = if u == 0.0 { b } else { sine_integral(b * u) / u };
        Complex64::from_polar(si, rate * u * u)
    };
    let mut j = adaptive_rel(f, &breaks, 1e-12, 1e-10, 100_000)?.value;
    if l2 > top {
        // (π/2) ∫ e^{iw}/(2w) dw over w = αu²/Λ².
        let (c0, s0) = cisi(rate * top * top);
        let (c1, s1) = cisi(rate * l2 * l2);
        j += Complex64::new(c1 - c0, s1 - s0) * (PI / 4.0);
    }
    Ok(4.0 / (PI * PI) * (j * beta.signum()).norm())
}

/// Dedicated `k = 2, n = 4` construction: growth of the truncated value in
/// `ln Λ` over the cutoff sweep.
pub fn run_n4k2_fresnel_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let kind = ExperimentKind::Fresnel;
    config.validate(kind)?;
    if config.k != 2 || config.n.is_some_and(|n| n != 4) {
        return Err(Error::InvalidInput("the Fresnel experiment is defined for k = 2, n = 4 only".into()));
    }
    let alphas = config.alpha_matrix(4)?;
    let phase = solve_phase_n4k2(&alphas, config.tol_phase)?;
    let (alpha, beta) = (phase.alpha_coef, phase.beta_coef);
    let list = config.sweep(kind);
    let values = list.par_iter().map(|&l| fresnel_value(alpha, beta, l)).collect::<Result<Vec<f64>>>()?;

    let mut out = ExperimentReport::empty(kind, config);
    out.n = Some(4);
    out.details.insert("alpha_coef".into(), alpha);
    out.details.insert("beta_coef".into(), beta);
    out.curve = list.iter().zip(&values).map(|(&l, &v)| CurvePoint::new(l, v, v / l.ln())).collect();
    let series = GrowthSeries::from_pairs(&list.iter().copied().zip(values.iter().copied()).collect::<Vec<_>>())?;
    let fit = fit_log_exponent(&series, config.fit_min_n)?;
    let tol = &config.tolerances;
    out.checks.push(Check::new(
        "exponent band",
        (tol.fresnel_min_exponent..=tol.fresnel_max_exponent).contains(&fit.exponent),
        format!("exponent {:.4} vs [{}, {}]", fit.exponent, tol.fresnel_min_exponent, tol.fresnel_max_exponent),
    ));

    let mut small_ok = true;
    for l in [0.25, 0.5, 1.0] {
        let v = fresnel_value(alpha, beta, l)?;
        let bound = 4.0 / (PI * PI) * beta.abs() * l * l;
        out.details.insert(format!("small_lambda_{l}"), v);
        small_ok &= v <= bound * (1.0 + 1e-9);
    }
    out.checks.push(Check::new("small cutoff bound", small_ok, "value <= (4/π²)|β|Λ² for Λ <= 1"));

    let last = *list.last().expect("non-empty sweep");
    let flipped = fresnel_value(alpha, -beta, last)?;
    let same = (flipped - values[values.len() - 1]).abs() <= 1e-12 * flipped.abs();
    out.checks.push(Check::new("mixed sign symmetry", same, format!("{flipped:.10} after β ↦ −β")));
    out.fit = Some(fit);
    Ok(out.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::adaptive;

    #[test]
    fn direct_quadrature_agrees_at_small_cutoff() {
        // Λ² below the numeric limit: compare with the t-form ∫₀^Λ e^{iαt²} Si(|β|Λt)/t dt.
        let (a, b, l) = (0.7, 1.3, 6.0);
        let f = |t: f64| {
            let s = if t == 0.0 { b * l } else { sine_integral(b * l * t) / t };
            Complex64::from_polar(s, a * t * t)
        };
        let j = adaptive(f, &[0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0], 1e-12, 10_000).unwrap().value;
        let v = fresnel_value(a, b, l).unwrap();
        assert!((v - 4.0 / (PI * PI) * j.norm()).abs() < 1e-9);
    }

    #[test]
    fn grows_like_two_over_pi_log() {
        let v3 = fresnel_value(1.0, 1.0, 1e3).unwrap();
        let v4 = fresnel_value(1.0, 1.0, 1e4).unwrap();
        let slope = (v4 - v3) / 10f64.ln();
        assert!((slope - 2.0 / PI).abs() < 0.01, "{slope}");
    }

    #[test]
    fn rejects_degenerate_input() {
        assert!(fresnel_value(0.0, 1.0, 10.0).is_err());
        assert!(fresnel_value(1.0, 0.0, 10.0).is_err());
    }

    #[test]
    fn experiment_passes_on_reference_seed() {
        let c = ExperimentConfig { seed: Some(1), ..Default::default() };
        let r = run_n4k2_fresnel_experiment(&c).unwrap();
        assert!(r.verdict.passed(), "{:?}", r.checks);
    }
}
