use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    #[serde(rename = "N")]
    pub n: f64,
    pub value: f64,
}

/// `(N, value)` pairs with strictly increasing `N`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct GrowthSeries {
    pub points: Vec<GrowthPoint>,
}

impl GrowthSeries {
    pub fn new(points: Vec<GrowthPoint>) -> Result<Self> {
        if points.windows(2).any(|w| !(w[1].n > w[0].n)) {
            return Err(Error::InvalidInput("series N values must be strictly increasing".into()));
        }
        if points.iter().any(|p| !p.value.is_finite()) {
            return Err(Error::InvalidInput("series values must be finite".into()));
        }
        Ok(Self { points })
    }

    pub fn from_pairs(pairs: &[(f64, f64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(n, value)| GrowthPoint { n, value }).collect())
    }
}

/// `value ≈ constant · (ln N)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub constant: f64,
    pub r_squared: f64,
    pub points_used: usize,
}

pub const MIN_FIT_POINTS: usize = 4;

/// Least-squares line through `(ln ln N, ln value)` over points with
/// `N ≥ fit_min_n`.
pub fn fit_log_exponent(series: &GrowthSeries, fit_min_n: f64) -> Result<FitResult> {
    let used: Vec<&GrowthPoint> = series.points.iter().filter(|p| p.n >= fit_min_n && p.n > 1.0).collect();
    if used.len() < MIN_FIT_POINTS {
        return Err(Error::InsufficientPoints { required: MIN_FIT_POINTS, got: used.len() });
    }
    if let Some(p) = used.iter().find(|p| !(p.value > 0.0)) {
        return Err(Error::NonPositiveValues { n: p.n, value: p.value });
    }
    let xs: Vec<f64> = used.iter().map(|p| p.n.ln().ln()).collect();
    let ys: Vec<f64> = used.iter().map(|p| p.value.ln()).collect();
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientPoints { required: MIN_FIT_POINTS, got: 1 });
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r_squared = if syy <= 1e-300 { 1.0 } else { (1.0 - ss_res / syy).clamp(0.0, 1.0) };
    Ok(FitResult { exponent: slope, constant: intercept.exp(), r_squared, points_used: used.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(p: f64, c: f64) -> GrowthSeries {
        let ns = [1e2, 3e2, 1e3, 3e3, 1e4];
        GrowthSeries::from_pairs(&ns.map(|n: f64| (n, c * n.ln().powf(p)))).unwrap()
    }

    #[test]
    fn exact_power_law() {
        let f = fit_log_exponent(&synthetic(2.0, 3.0), 100.0).unwrap();
        assert!((f.exponent - 2.0).abs() < 1e-12);
        assert!((f.constant - 3.0).abs() < 1e-10);
        assert!((f.r_squared - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_series() {
        let f = fit_log_exponent(&synthetic(0.0, 5.0), 100.0).unwrap();
        assert!(f.exponent.abs() < 1e-12);
        assert_eq!(f.r_squared, 1.0);
    }

    #[test]
    fn too_few_or_bad_points() {
        let s = synthetic(1.0, 1.0);
        assert!(matches!(fit_log_exponent(&s, 500.0), Err(Error::InsufficientPoints { required: 4, got: 3 })));
        let bad = GrowthSeries::from_pairs(&[(100.0, 1.0), (200.0, -1.0), (300.0, 2.0), (400.0, 3.0)]).unwrap();
        assert!(matches!(fit_log_exponent(&bad, 10.0), Err(Error::NonPositiveValues { .. })));
        assert!(GrowthSeries::from_pairs(&[(2.0, 1.0), (1.0, 1.0)]).is_err());
    }
}
