use serde::{Deserialize, Serialize};

use super::average::sinc_log_moment;
use super::special::sinc;
use crate::error::{Error, Result};

/// `∫_{[−N,N]^k} sin(t₁⋯t_k)/(t₁⋯t_k) dt = 2^k ∫₀^{N^k} H^{k−1}F(u) du`.
pub fn cube_integral(k: u32, n: f64) -> Result<f64> {
    if !(1..=6).contains(&k) {
        return Err(Error::InvalidInput(format!("cube integral needs 1 <= k <= 6, got {k}")));
    }
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::InvalidInput(format!("N must be finite and non-negative, got {n}")));
    }
    Ok(2f64.powi(k as i32) * sinc_log_moment(n.powi(k as i32), k - 1))
}

/// Midpoint tensor rule for `2^k ∫_{[0,N]^k} sin(∏t)/∏t`, `k ∈ {1, 2, 3}`.
///
/// The spacing `N / resolution` must not exceed `0.25 / N^{k−1}`.
pub fn brute_force_cube_integral(k: u32, n: f64, resolution: usize) -> Result<f64> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidInput(format!("brute force supports k in 1..=3, got {k}")));
    }
    if n == 0.0 {
        return Ok(0.0);
    }
    let h = n / resolution as f64;
    let required = 0.25 / n.powi(k as i32 - 1);
    if resolution == 0 || h > required {
        return Err(Error::ResolutionTooCoarse { spacing: h, required });
    }
    let nodes: Vec<f64> = (0..resolution).map(|i| (i as f64 + 0.5) * h).collect();
    let sum: f64 = match k {
        1 => nodes.iter().map(|&t| sinc(t)).sum::<f64>() * h,
        2 => {
            let mut s = 0.0;
            for &a in &nodes {
                s += nodes.iter().map(|&b| sinc(a * b)).sum::<f64>();
            }
            s * h * h
        }
        _ => {
            let mut s = 0.0;
            for &a in &nodes {
                for &b in &nodes {
                    let ab = a * b;
                    s += nodes.iter().map(|&c| sinc(ab * c)).sum::<f64>();
                }
            }
            s * h * h * h
        }
    };
    Ok(2f64.powi(k as i32) * sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundPoint {
    pub n: f64,
    pub value: f64,
    /// `value / (ln N)^{k−1}`.
    pub ratio: f64,
}

pub fn lower_bound_series(k: u32, n_list: &[f64]) -> Result<Vec<LowerBoundPoint>> {
    if n_list.windows(2).any(|w| w[1] <= w[0]) || n_list.first().is_some_and(|&n| n < 10.0) {
        return Err(Error::InvalidInput("N list must be increasing with N >= 10".into()));
    }
    n_list
        .iter()
        .map(|&n| {
            let value = cube_integral(k, n)?;
            Ok(LowerBoundPoint { n, value, ratio: value / n.ln().powi(k as i32 - 1) })
        })
        .collect()
}
