use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::counterexample::{counterexample_value, reduced_phase};
use super::{Check, CurvePoint, ExperimentConfig, ExperimentKind, ExperimentReport};
use crate::error::{Error, Result};
use crate::geometry::support_polytope;
use crate::integrate::{pv_reference_1d, pv_tensor_oracle, required_spacing, ChirpSpec};
use crate::phase::{solve_phase, solve_phase_n4k2, AlphaMatrix};

/// Nodes per half-axis below which the 1-D oracle is not trusted to `1e−3`.
const MIN_K1_RESOLUTION: usize = 100_000;

/// Oracle against the sine-part reduction at one cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub cutoff: f64,
    pub oracle_re: f64,
    pub oracle_im: f64,
    /// `(1/π^k)|sin part|`.
    pub sin_part: f64,
    /// `|oracle| − sin_part`.
    pub margin: f64,
    pub resolution: usize,
}

impl OracleComparison {
    pub fn oracle_abs(&self) -> f64 {
        Complex64::new(self.oracle_re, self.oracle_im).norm()
    }

    /// Relative amount by which `|oracle|` falls short of the sine part.
    pub fn shortfall(&self) -> f64 {
        (-self.margin).max(0.0) / self.sin_part
    }
}

fn phase_chirps(alphas: &AlphaMatrix, config: &ExperimentConfig, cutoff: f64) -> Result<Vec<ChirpSpec>> {
    let theta = if alphas.n() == 4 && alphas.k() == 2 {
        solve_phase_n4k2(alphas, config.tol_phase)?.phase.theta
    } else {
        solve_phase(alphas, config.tol_phase)?.theta
    };
    theta.iter().map(|&p| ChirpSpec::new(p, alphas.k() as u32, cutoff)).collect()
}

fn resolution_for(alphas: &AlphaMatrix, chirps: &[ChirpSpec], x: f64, config: &ExperimentConfig) -> Result<usize> {
    if let Some(r) = config.oracle_resolution {
        return Ok(r);
    }
    let k = alphas.k();
    let radius = support_polytope(x, alphas, chirps[0].cutoff)?.circumscribed_box()?.radius();
    let auto = (radius / required_spacing(k, chirps, radius)).ceil() as usize;
    Ok(if k == 1 { auto.max(MIN_K1_RESOLUTION) } else { auto })
}

fn rel_gap(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

/// Compares the principal-value tensor oracle with the reductions used
/// elsewhere: the 1-D principal value for `k = 1` with flat inputs, the
/// sine part of the reduced kernel for `k = 2` with the solved chirps.
pub fn run_oracle_crosscheck(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let kind = ExperimentKind::Oracle;
    config.validate(kind)?;
    match config.k {
        1 => k1_crosscheck(config),
        2 => k2_crosscheck(config),
        k => Err(Error::InvalidInput(format!("oracle crosscheck needs k in {{1, 2}}, got {k}"))),
    }
}

fn k1_crosscheck(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let kind = ExperimentKind::Oracle;
    let alphas = config.alpha_matrix(config.n_or_default())?;
    let n = alphas.n();
    let mut out = ExperimentReport::empty(kind, config);
    out.n = Some(n);
    let tol = config.tolerances.oracle_k1_rel;
    for cutoff in config.sweep(kind) {
        let chirps = vec![ChirpSpec::new(0.0, 1, cutoff)?; n];
        for &frac in &config.x_points {
            let x = frac * cutoff;
            let resolution = resolution_for(&alphas, &chirps, x, config)?;
            let oracle = pv_tensor_oracle(1, &alphas, &chirps, x, resolution)?;
            let (lo, hi) = support_polytope(x, &alphas, cutoff)?
                .slice_interval(&[])
                .ok_or_else(|| Error::InvalidInput("empty support".into()))?;
            let pv = pv_reference_1d(|_| Complex64::new(1.0, 0.0), lo, hi, 1e-12, 1_000)?;
            let reference = pv * Complex64::new(0.0, 1.0 / PI);
            let gap = rel_gap(oracle, reference);
            out.curve.push(CurvePoint::new(cutoff, oracle.norm(), oracle.norm() / reference.norm()));
            out.checks.push(Check::new(
                &format!("one-dimensional principal value N={cutoff} x={x}"),
                gap <= tol,
                format!("oracle {oracle:.8}, reference {reference:.8}, relative gap {gap:.2e}"),
            ));
        }
    }
    Ok(out.finish())
}

fn k2_crosscheck(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let kind = ExperimentKind::Oracle;
    let alphas = config.alpha_matrix(4)?;
    let n = alphas.n();
    let phase = reduced_phase(&alphas, config)?;
    let mut out = ExperimentReport::empty(kind, config);
    out.n = Some(n);
    for cutoff in config.sweep(kind) {
        let cmp = compare_at(&alphas, phase, config, cutoff)?;
        out.curve.push(CurvePoint::new(cutoff, cmp.oracle_abs(), cmp.oracle_abs() / cmp.sin_part));
        out.details.insert(format!("oracle_re_N{cutoff}"), cmp.oracle_re);
        out.details.insert(format!("oracle_im_N{cutoff}"), cmp.oracle_im);
        out.details.insert(format!("sin_part_N{cutoff}"), cmp.sin_part);
        out.details.insert(format!("margin_N{cutoff}"), cmp.margin);
        out.details.insert(format!("resolution_N{cutoff}"), cmp.resolution as f64);
        let refined = refined_abs(&alphas, config, cutoff, 2 * cmp.resolution)?;
        out.details.insert(format!("refined_oracle_abs_N{cutoff}"), refined);
        let gap = config.tolerances.oracle_rel_gap;
        out.checks.push(Check::new(
            &format!("lower-bound direction N={cutoff}"),
            cmp.shortfall() <= gap,
            format!(
                "|oracle| {:.6}, sine part {:.6}, margin {:+.6}, allowed shortfall {gap}",
                cmp.oracle_abs(),
                cmp.sin_part,
                cmp.margin
            ),
        ));
    }
    structural_checks(&alphas, config, &mut out)?;
    Ok(out.finish())
}

fn compare_at(
    alphas: &AlphaMatrix,
    phase: super::ReducedPhase,
    config: &ExperimentConfig,
    cutoff: f64,
) -> Result<OracleComparison> {
    let chirps = phase_chirps(alphas, config, cutoff)?;
    let resolution = resolution_for(alphas, &chirps, 0.0, config)?;
    let oracle = pv_tensor_oracle(2, alphas, &chirps, 0.0, resolution)?;
    let sin_part = counterexample_value(alphas, phase, 0.0, cutoff, &config.quad)?;
    Ok(OracleComparison {
        cutoff,
        oracle_re: oracle.re,
        oracle_im: oracle.im,
        sin_part,
        margin: oracle.norm() - sin_part,
        resolution,
    })
}

/// `|oracle|` on a finer grid, as a convergence record.
fn refined_abs(alphas: &AlphaMatrix, config: &ExperimentConfig, cutoff: f64, resolution: usize) -> Result<f64> {
    let chirps = phase_chirps(alphas, config, cutoff)?;
    Ok(pv_tensor_oracle(2, alphas, &chirps, 0.0, resolution)?.norm())
}

/// Dilation covariance and linearity in one input, on a quarter-size
/// instance of the first cutoff so the grid stays small.
fn structural_checks(alphas: &AlphaMatrix, config: &ExperimentConfig, out: &mut ExperimentReport) -> Result<()> {
    const RTOL: f64 = 1e-6;
    let cutoff = config.sweep(ExperimentKind::Oracle)[0] / 4.0;
    let x = 0.02 * cutoff;
    let chirps = phase_chirps(alphas, config, cutoff)?;
    let resolution = resolution_for(alphas, &chirps, x, config)?;
    let base = pv_tensor_oracle(2, alphas, &chirps, x, resolution)?;

    let lambda: f64 = 2.0;
    let dilated: Vec<ChirpSpec> = chirps
        .iter()
        .map(|c| ChirpSpec::new(c.phase_coefficient / lambda.powi(2), 2, c.cutoff * lambda))
        .collect::<Result<_>>()?;
    let d = pv_tensor_oracle(2, alphas, &dilated, x * lambda, resolution)?;
    let gap = rel_gap(d, base);
    out.checks.push(Check::new("dilation covariance", gap <= RTOL, format!("relative gap {gap:.2e}")));

    let mut scaled = chirps.clone();
    scaled[1].amplitude = -1.5;
    let s = pv_tensor_oracle(2, alphas, &scaled, x, resolution)?;
    let gap = rel_gap(s, base * -1.5);
    out.checks.push(Check::new("linearity", gap <= RTOL, format!("relative gap {gap:.2e}")));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k1_flat_inputs_match_reference() {
        let c = ExperimentConfig { k: 1, seed: Some(2), n_list: Some(vec![10.0, 20.0]), ..Default::default() };
        let r = run_oracle_crosscheck(&c).unwrap();
        assert!(r.verdict.passed(), "{:?}", r.checks);
        assert_eq!(r.checks.len(), 6);
    }

    #[test]
    fn coarse_override_is_infeasible() {
        let c = ExperimentConfig { seed: Some(1), oracle_resolution: Some(20), ..Default::default() };
        let e = run_oracle_crosscheck(&c).unwrap_err();
        assert!(e.is_numeric_infeasibility(), "{e}");
    }

    #[test]
    fn rejects_k3() {
        let c = ExperimentConfig { k: 3, seed: Some(1), ..Default::default() };
        assert!(run_oracle_crosscheck(&c).is_err());
    }
}
