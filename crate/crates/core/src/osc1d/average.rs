use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::special::{sinc, sine_integral};
use crate::error::{Error, Result};
use crate::quad::CompositeGauss;

pub const DEFAULT_POINTS_PER_DECADE: usize = 64;
pub const TABLE_X_MIN: f64 = 1e-3;
pub const MAX_LEVEL: u32 = 6;

/// Split point between direct quadrature and the asymptotic tail.
const ASYMPTOTIC_START: f64 = 400.0;
/// Terms kept in the integration-by-parts expansion of the tail.
const ASYMPTOTIC_TERMS: usize = 25;
/// Truncation of the `u = m·e^{−s}` substitution near the origin.
const LOG_SUBSTITUTION_SPAN: f64 = 60.0;

fn factorial(p: u32) -> f64 {
    (1..=p).map(f64::from).product()
}

/// `∫₀^T sinc(u) · ln(T/u)^p / p! du`.
///
/// Three pieces: `[0, min(1, T)]` after substituting `u = m e^{−s}` (which
/// removes the logarithmic endpoint singularity), composite Gauss–Legendre on
/// `[min(1, T), min(T, 400)]`, and for larger `T` the exact
/// integration-by-parts expansion of `Im ∫ e^{iu} w(u) du` with
/// `w(u) = ln(T/u)^p / (p! u)`, truncated after 25 terms.
pub fn sinc_log_moment(t: f64, p: u32) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    if p == 0 {
        return sine_integral(t);
    }
    let rule = CompositeGauss::new(20);
    let pf = factorial(p);
    let m = t.min(1.0);
    let ln_tm = (t / m).ln();
    let head = rule.integrate(
        |s: f64| {
            let u = m * (-s).exp();
            u.sin() * (ln_tm + s).powi(p as i32) / pf
        },
        0.0,
        LOG_SUBSTITUTION_SPAN,
        1.0,
    );
    let a = t.min(ASYMPTOTIC_START);
    let body = rule.integrate(|u: f64| sinc(u) * (t / u).ln().powi(p as i32) / pf, m, a, 1.0);
    let tail = if t > a { oscillatory_tail(a, t, p) } else { 0.0 };
    head + body + tail
}

/// `∫_A^T sin(u) ln(T/u)^p / (p! u) du` via repeated integration by parts.
fn oscillatory_tail(a: f64, t: f64, p: u32) -> f64 {
    // w^{(j)} as Σ c · L^e / u^q with L = ln(T/u).
    let mut terms: Vec<(u32, i32, f64)> = vec![(p, 1, 1.0 / factorial(p))];
    let eval = |terms: &[(u32, i32, f64)], u: f64| -> f64 {
        let l = (t / u).ln().max(0.0);
        terms
            .iter()
            .map(|&(e, q, c)| {
                let le = if e == 0 { 1.0 } else { l.powi(e as i32) };
                c * le / u.powi(q)
            })
            .sum()
    };
    let ea = Complex64::new(a.cos(), a.sin());
    let et = Complex64::new(t.cos(), t.sin());
    let mut acc = Complex64::new(0.0, 0.0);
    // (−1)^j / i^{j+1} = (−1)^j (−i)^{j+1}
    let mut factor = Complex64::new(0.0, -1.0);
    for _ in 0..ASYMPTOTIC_TERMS {
        let wt = eval(&terms, t);
        let wa = eval(&terms, a);
        acc += factor * (et * wt - ea * wa);
        factor *= Complex64::new(0.0, 1.0); // (−1)·(−i) = i
        terms = differentiate(&terms);
    }
    acc.im
}

fn differentiate(terms: &[(u32, i32, f64)]) -> Vec<(u32, i32, f64)> {
    // d/du [L^e u^{−q}] = −e L^{e−1} u^{−q−1} − q L^e u^{−q−1}
    let mut out: Vec<(u32, i32, f64)> = Vec::with_capacity(terms.len() + 1);
    let mut push = |e: u32, q: i32, c: f64| {
        if let Some(x) = out.iter_mut().find(|x| x.0 == e && x.1 == q) {
            x.2 += c;
        } else {
            out.push((e, q, c));
        }
    };
    for &(e, q, c) in terms {
        if e > 0 {
            push(e - 1, q + 1, -(e as f64) * c);
        }
        push(e, q + 1, -(q as f64) * c);
    }
    out
}

/// Taylor series `H^l F(x) = Σ (−1)^n x^{2n} / ((2n+1)! (2n+1)^l)`.
fn iterated_average_series(l: u32, x: f64) -> f64 {
    let x2 = x * x;
    let mut sum = 0.0;
    let mut pow = 1.0; // x^{2n}/(2n+1)!
    for n in 0..20 {
        let odd = (2 * n + 1) as f64;
        sum += pow / odd.powi(l as i32) * if n % 2 == 0 { 1.0 } else { -1.0 };
        pow *= x2 / ((odd + 1.0) * (odd + 2.0));
        if pow < 1e-20 {
            break;
        }
    }
    sum
}

/// `H^l F(x)` for `x ≥ 0`.
pub fn iterated_average_at(l: u32, x: f64) -> f64 {
    if l == 0 {
        return sinc(x);
    }
    if x < TABLE_X_MIN {
        return iterated_average_series(l, x);
    }
    sinc_log_moment(x, l - 1) / x
}

/// `∫₀^t H^l F(u) du`.
pub fn iterated_average_integral(l: u32, t: f64) -> f64 {
    sinc_log_moment(t, l)
}

/// `H^l F` sampled on a logarithmic grid from `1e−3` to `x_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IteratedAverageTable {
    pub level: u32,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl IteratedAverageTable {
    /// Cubic interpolation in `ln x`; below the grid the Taylor series is used.
    pub fn interpolate(&self, x: f64) -> f64 {
        let n = self.grid.len();
        if x <= self.grid[0] {
            return iterated_average_at(self.level, x.max(0.0));
        }
        if x >= self.grid[n - 1] {
            return self.values[n - 1];
        }
        let lx = x.ln();
        let i = self.grid.partition_point(|&g| g <= x).saturating_sub(1);
        let start = i.saturating_sub(1).min(n.saturating_sub(4));
        let idx: Vec<usize> = (start..(start + 4).min(n)).collect();
        let mut acc = 0.0;
        for &a in &idx {
            let la = self.grid[a].ln();
            let mut w = 1.0;
            for &b in &idx {
                if a != b {
                    let lb = self.grid[b].ln();
                    w *= (lx - lb) / (la - lb);
                }
            }
            acc += w * self.values[a];
        }
        acc
    }
}

/// Builds the table for `H^l F`, `l ≤ 6`, `x_max ≥ 1`.
pub fn iterated_average(l: u32, x_max: f64, points_per_decade: usize) -> Result<IteratedAverageTable> {
    if points_per_decade < 16 {
        return Err(Error::GridTooCoarse { points_per_decade });
    }
    if l > MAX_LEVEL {
        return Err(Error::InvalidInput(format!("level {l} exceeds {MAX_LEVEL}")));
    }
    if !(x_max >= 1.0) {
        return Err(Error::InvalidInput(format!("x_max must be at least 1, got {x_max}")));
    }
    let decades = (x_max / TABLE_X_MIN).log10();
    let count = (decades * points_per_decade as f64).ceil() as usize + 1;
    let step = decades / (count - 1) as f64;
    let grid: Vec<f64> = (0..count)
        .map(|i| if i + 1 == count { x_max } else { TABLE_X_MIN * 10f64.powf(i as f64 * step) })
        .collect();
    let values = grid.iter().map(|&x| iterated_average_at(l, x)).collect();
    Ok(IteratedAverageTable { level: l, grid, values })
}
