//! Direct principal-value quadrature of the chirp kernel
//!
//! ```text
//! (−1)^k/(iπ)^k · p.v.∫ f(x + Σtᵢ) ∏_j f_j(x + α_{·j}·t) ∏ dtᵢ/tᵢ
//! ```
//!
//! on a midpoint grid symmetric about every axis, so no node sits on a
//! singular hyperplane and the odd part of each `1/tᵢ` cancels in pairs.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{Strip, SupportPolytope};
use crate::phase::AlphaMatrix;
use crate::quad::adaptive;

use super::ChirpSpec;

/// Support of the integrand: one strip per chirp cutoff.
fn chirp_polytope(alphas: &AlphaMatrix, chirps: &[ChirpSpec], x: f64) -> Result<SupportPolytope> {
    let k = alphas.k();
    let mut strips = Vec::with_capacity(chirps.len());
    for (j, c) in chirps.iter().enumerate() {
        let beta = if j == 0 { vec![1.0; k] } else { alphas.column(j - 1) };
        strips.push(Strip::new(beta, -c.cutoff - x, c.cutoff - x)?);
    }
    SupportPolytope::from_strips(k, strips)
}

/// Grid spacing needed to resolve the fastest chirp over a box of radius `radius`.
pub fn required_spacing(k: usize, chirps: &[ChirpSpec], radius: f64) -> f64 {
    let theta = chirps.iter().map(|c| c.phase_coefficient.abs()).fold(0.0, f64::max);
    if theta == 0.0 {
        return 0.25;
    }
    (0.25 / (k as f64 * theta * radius.powi(k as i32 - 1))).min(0.25)
}

/// Midpoint PV quadrature with `resolution` nodes per half-axis.
pub fn pv_tensor_oracle(
    k: usize,
    alphas: &AlphaMatrix,
    chirps: &[ChirpSpec],
    x: f64,
    resolution: usize,
) -> Result<Complex64> {
    if !(1..=2).contains(&k) || alphas.k() != k {
        return Err(Error::InvalidInput(format!("oracle supports k in {{1, 2}} matching the alphas, got k = {k}")));
    }
    if chirps.len() != alphas.n() {
        return Err(Error::DimensionMismatch(format!("{} chirps for n = {}", chirps.len(), alphas.n())));
    }
    if resolution == 0 {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let poly = chirp_polytope(alphas, chirps, x)?;
    let bx = poly.circumscribed_box()?;
    let radius = bx.radius();
    let h = radius / resolution as f64;
    let required = required_spacing(k, chirps, radius);
    if h > required {
        return Err(Error::ResolutionTooCoarse { spacing: h, required });
    }
    let nodes: Vec<f64> = (0..resolution)
        .flat_map(|i| {
            let t = (i as f64 + 0.5) * h;
            [-t, t]
        })
        .collect();
    let columns: Vec<Vec<f64>> = (0..alphas.n() - 1).map(|j| alphas.column(j)).collect();
    let integrand = |t: &[f64]| -> Complex64 {
        let mut acc = chirps[0].eval(x + t.iter().sum::<f64>());
        if acc == Complex64::new(0.0, 0.0) {
            return acc;
        }
        for (c, col) in chirps[1..].iter().zip(&columns) {
            let arg = x + col.iter().zip(t).map(|(a, b)| a * b).sum::<f64>();
            acc *= c.eval(arg);
        }
        acc / t.iter().product::<f64>()
    };
    let sum: Complex64 = match k {
        1 => nodes.iter().map(|&t| integrand(&[t])).sum(),
        _ => {
            // Row sums in parallel, combined in a fixed order.
            let rows: Vec<Complex64> = nodes
                .par_iter()
                .map(|&t1| nodes.iter().map(|&t2| integrand(&[t1, t2])).sum())
                .collect();
            rows.into_iter().sum()
        }
    };
    let i_pi = Complex64::new(0.0, std::f64::consts::PI);
    let prefactor = Complex64::new((-1.0f64).powi(k as i32), 0.0) / i_pi.powi(k as i32);
    Ok(prefactor * sum * h.powi(k as i32))
}

/// `p.v. ∫_a^b f(t)/t dt` for `a < 0 < b`, folding the symmetric part.
pub fn pv_reference_1d<F>(f: F, a: f64, b: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64,
{
    if !(a < 0.0 && 0.0 < b) {
        return Err(Error::InvalidInput(format!("principal value needs a < 0 < b, got [{a}, {b}]")));
    }
    let c = (-a).min(b);
    let folded = adaptive(|t: f64| (f(t) - f(-t)) / t, &[0.0, c], abs_tol, max_subdivisions)?.value;
    let rest = if b > c {
        adaptive(|t: f64| f(t) / t, &[c, b], abs_tol, max_subdivisions)?.value
    } else if -a > c {
        adaptive(|t: f64| f(t) / t, &[a, -c], abs_tol, max_subdivisions)?.value
    } else {
        Complex64::new(0.0, 0.0)
    };
    Ok(folded + rest)
}
