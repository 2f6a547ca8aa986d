//! Splitting the polytope integral into the inscribed cube and the rest.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Strip, SupportPolytope};
use crate::osc1d::cube_integral;

use super::{sinprod_over_polytope, QuadSpec};

/// `∫_{D \ [−c, c]^k}` where `c` is the inscribed cube half side.
pub fn complement_integral(k: usize, poly: &SupportPolytope, spec: &QuadSpec) -> Result<f64> {
    if poly.k != k {
        return Err(Error::DimensionMismatch(format!("polytope has k = {}, expected {k}", poly.k)));
    }
    let c = poly.inscribed_cube_side()?;
    Ok(sinprod_over_polytope(poly, spec)? - cube_integral(k as u32, c)?)
}

/// The piece of the polytope with `t₁ ≥ 0`.
pub fn half_space_piece(poly: &SupportPolytope, spec: &QuadSpec) -> Result<f64> {
    let bx = poly.circumscribed_box()?;
    let mut beta = vec![0.0; poly.k];
    beta[0] = 1.0;
    let mut strips = poly.strips.clone();
    strips.push(Strip::new(beta, 0.0, bx.hi[0].max(0.0) + 1.0)?);
    sinprod_over_polytope(&SupportPolytope::from_strips(poly.k, strips)?, spec)
}

/// One term of the sup-norm dyadic split; `shell = None` is the unit cube.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShellIntegral {
    pub shell: Option<u32>,
    pub inner: f64,
    pub outer: f64,
    pub value: f64,
}

fn clipped(poly: &SupportPolytope, half: f64, spec: &QuadSpec) -> Result<f64> {
    let lo = vec![-half; poly.k];
    let hi = vec![half; poly.k];
    sinprod_over_polytope(&poly.intersect_box(&lo, &hi)?, spec)
}

/// Unit piece plus shells `2^d < |t|_∞ ≤ 2^{d+1}` up to the polytope radius.
pub fn dyadic_shell_decomposition(k: usize, poly: &SupportPolytope, spec: &QuadSpec) -> Result<Vec<ShellIntegral>> {
    if !(2..=3).contains(&k) || poly.k != k {
        return Err(Error::InvalidInput(format!("dyadic shells need k in {{2, 3}} matching the polytope, got {k}")));
    }
    let radius = poly.circumscribed_box()?.radius();
    let mut out = Vec::new();
    let mut previous = clipped(poly, 1.0, spec)?;
    out.push(ShellIntegral { shell: None, inner: 0.0, outer: 1.0, value: previous });
    let mut d = 0u32;
    while 2f64.powi(d as i32) < radius {
        let (inner, outer) = (2f64.powi(d as i32), 2f64.powi(d as i32 + 1));
        let next = clipped(poly, outer, spec)?;
        out.push(ShellIntegral { shell: Some(d), inner, outer, value: next - previous });
        previous = next;
        d += 1;
    }
    Ok(out)
}
