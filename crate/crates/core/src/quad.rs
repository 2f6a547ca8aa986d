//! Gauss rules and a global adaptive integrator.
//!
//! The adaptive routine follows the classical QAG scheme: every panel is
//! integrated with the 15-point Kronrod extension of the 7-point Gauss rule,
//! the panel with the largest error estimate is bisected, and the loop stops
//! once the summed estimate falls below the absolute tolerance.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Values the integrators can accumulate: reals and complex numbers.
pub trait QuadValue:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// One Gauss–Kronrod 7/15 panel: returns (Kronrod estimate, |K15 − G7|).
pub fn gk15<T, F>(f: &mut F, a: f64, b: f64) -> (T, f64)
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let pair = f1 + f2;
        kronrod = kronrod + pair * WGK[j];
        if j % 2 == 1 {
            gauss = gauss + pair * WG[j / 2];
        }
    }
    let k = kronrod * half;
    let g = gauss * half;
    (k, (k - g).magnitude())
}

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult<T> {
    pub value: T,
    pub error: f64,
    pub panels: usize,
}

struct Panel<T> {
    a: f64,
    b: f64,
    value: T,
    error: f64,
}

impl<T> PartialEq for Panel<T> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<T> Eq for Panel<T> {}
impl<T> PartialOrd for Panel<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Panel<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.a.partial_cmp(&self.a).unwrap_or(Ordering::Equal))
    }
}

/// Global adaptive quadrature over the panels delimited by `breaks`
/// (sorted, at least two entries).
///
/// `max_subdivisions` counts bisections beyond the initial panels.
pub fn adaptive<T, F>(f: F, breaks: &[f64], abs_tol: f64, max_subdivisions: usize) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    adaptive_rel(f, breaks, abs_tol, 0.0, max_subdivisions)
}

/// As [`adaptive`], stopping once the estimate is below
/// `max(abs_tol, rel_tol · |value|)`.
pub fn adaptive_rel<T, F>(
    mut f: F,
    breaks: &[f64],
    abs_tol: f64,
    rel_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadResult<T>>
where
    T: QuadValue,
    F: FnMut(f64) -> T,
{
    if breaks.len() < 2 {
        return Ok(QuadResult { value: T::zero(), error: 0.0, panels: 0 });
    }
    let mut heap = BinaryHeap::with_capacity(breaks.len());
    let mut total_err = 0.0;
    let mut running = T::zero();
    for w in breaks.windows(2) {
        if w[1] <= w[0] {
            continue;
        }
        let (value, error) = gk15(&mut f, w[0], w[1]);
        total_err += error;
        running = running + value;
        heap.push(Panel { a: w[0], b: w[1], value, error });
    }
    let mut splits = 0;
    while total_err > abs_tol.max(rel_tol * running.magnitude()) {
        if splits >= max_subdivisions {
            return Err(Error::ToleranceNotMet {
                tol: abs_tol.max(rel_tol * running.magnitude()),
                estimate: total_err,
                max_subdivisions,
            });
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Panel cannot be split further in floating point.
            heap.push(Panel { error: 0.0, ..worst });
            total_err -= worst.error;
            continue;
        }
        let (v1, e1) = gk15(&mut f, worst.a, mid);
        let (v2, e2) = gk15(&mut f, mid, worst.b);
        total_err += e1 + e2 - worst.error;
        running = running + v1 + v2 - worst.value;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
        splits += 1;
    }
    // Sum in left-to-right order so the result does not depend on heap layout.
    let mut panels: Vec<Panel<T>> = heap.into_vec();
    panels.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap_or(Ordering::Equal));
    let n = panels.len();
    let value = panels.iter().fold(T::zero(), |acc, p| acc + p.value);
    Ok(QuadResult { value, error: total_err.max(0.0), panels: n })
}

/// Gauss–Legendre nodes and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm1) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Fixed composite Gauss–Legendre rule on uniform panels.
#[derive(Debug, Clone)]
pub struct CompositeGauss {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl CompositeGauss {
    pub fn new(order: usize) -> Self {
        let (nodes, weights) = gauss_legendre(order);
        Self { nodes, weights }
    }

    pub fn panel<T: QuadValue, F: FnMut(f64) -> T>(&self, f: &mut F, a: f64, b: f64) -> T {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut acc = T::zero();
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(c + h * x) * *w;
        }
        acc * h
    }

    /// Integrates over [a, b] split into panels no longer than `max_width`.
    pub fn integrate<T: QuadValue, F: FnMut(f64) -> T>(
        &self,
        mut f: F,
        a: f64,
        b: f64,
        max_width: f64,
    ) -> T {
        if b <= a {
            return T::zero();
        }
        let panels = ((b - a) / max_width).ceil().max(1.0) as usize;
        let h = (b - a) / panels as f64;
        let mut acc = T::zero();
        for i in 0..panels {
            let lo = a + i as f64 * h;
            let hi = if i + 1 == panels { b } else { lo + h };
            acc = acc + self.panel(&mut f, lo, hi);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_is_exact_for_degree_22_monomials() {
        for p in [0, 1, 5, 13, 22] {
            let (v, _) = gk15(&mut |x: f64| x.powi(p), 0.0, 1.0);
            assert!((v - 1.0 / (p as f64 + 1.0)).abs() < 1e-14, "p={p}: {v}");
        }
        let (_, err) = gk15(&mut |x: f64| x.powi(13), 0.0, 1.0);
        assert!(err < 1e-14);
    }

    #[test]
    fn gauss_legendre_weights_and_exactness() {
        for n in [1, 2, 7, 16, 31] {
            let (x, w) = gauss_legendre(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13);
            let deg = 2 * n as i32 - 1;
            let integral: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(deg - 1)).sum();
            assert!((integral - 2.0 / deg as f64).abs() < 1e-13, "n={n}");
        }
    }

    #[test]
    fn adaptive_handles_sqrt_endpoint() {
        let r = adaptive(|x: f64| x.sqrt(), &[0.0, 1.0], 1e-12, 200).unwrap();
        assert!((r.value - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn adaptive_reports_failure() {
        let r = adaptive(|x: f64| 1.0 / x.sqrt(), &[0.0, 1.0], 1e-14, 3);
        assert!(matches!(r, Err(Error::ToleranceNotMet { .. })));
    }

    #[test]
    fn complex_values() {
        let r = adaptive(
            |x: f64| Complex64::new(x.cos(), x.sin()),
            &[0.0, std::f64::consts::PI],
            1e-12,
            50,
        )
        .unwrap();
        assert!(r.value.re.abs() < 1e-12 && (r.value.im - 2.0).abs() < 1e-12);
    }
}
