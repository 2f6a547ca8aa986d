//! Quadratic phases for the bi-Riesz-kernel operator.
//!
//! The chirps `e^{iθ_j x²}` turn the operator's phase into
//! `Σ_j θ_j (x − a⃗_j·t⃗ − b⃗_j·s⃗)²` over the `2d + 1` variables
//! `x, t₁…t_d, s₁…s_d`. All monomials except `x²` and `tᵢsᵢ` must vanish.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::multi_index::{enumerate_multi_indices, multinomial, MultiIndex};
use crate::error::{Error, Result};
use crate::linalg::{self, dot};

/// Columns `a⃗_j`, `b⃗_j` stored as `d × n` matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RieszPhaseSpec {
    pub d: usize,
    pub n: usize,
    pub a: Vec<Vec<f64>>,
    pub b: Vec<Vec<f64>>,
}

/// Number of quadratic monomials in `2d + 1` variables, `(2d + 1)(2d + 2)/2 = 2d² + 3d + 1`.
pub fn riesz_monomial_count(d: usize) -> usize {
    2 * d * d + 3 * d + 1
}

/// Monomials that must vanish: all but `x²` and the `d` products `tᵢsᵢ`.
pub fn riesz_constraint_count(d: usize) -> usize {
    riesz_monomial_count(d) - d - 1
}

/// Smallest `n` with a generically nonzero solution.
pub fn riesz_min_n(d: usize) -> usize {
    riesz_constraint_count(d) + 1
}

impl RieszPhaseSpec {
    /// Seeded entries, uniform in `[−2, 2]`.
    pub fn sample(d: usize, n: usize, seed: u64) -> Result<Self> {
        if d == 0 || n < riesz_min_n(d) {
            return Err(Error::InvalidInput(format!(
                "need d >= 1 and n >= 2d^2 + 2d + 1 = {}, got d = {d}, n = {n}",
                riesz_min_n(d.max(1))
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || -> Vec<Vec<f64>> {
            (0..d).map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect()).collect()
        };
        let a = draw();
        let b = draw();
        Ok(Self { d, n, a, b })
    }

    fn validate(&self) -> Result<()> {
        let shape_ok = |m: &Vec<Vec<f64>>| m.len() == self.d && m.iter().all(|r| r.len() == self.n);
        if !shape_ok(&self.a) || !shape_ok(&self.b) {
            return Err(Error::DimensionMismatch("A and B must be d x n".into()));
        }
        if self.d == 0 || self.n < riesz_min_n(self.d) {
            return Err(Error::InvalidInput("n must be at least 2d^2 + 2d + 1".into()));
        }
        Ok(())
    }

    /// Coefficients of `x, t⃗, s⃗` in the `j`-th linear form.
    pub fn linear_form(&self, j: usize) -> Vec<f64> {
        let mut f = vec![1.0];
        f.extend(self.a.iter().map(|r| -r[j]));
        f.extend(self.b.iter().map(|r| -r[j]));
        f
    }

    fn is_retained(&self, idx: &MultiIndex) -> bool {
        let e = idx.exponents();
        if e[0] == 2 {
            return true;
        }
        (1..=self.d).any(|i| e[i] == 1 && e[self.d + i] == 1)
    }

    fn row(&self, idx: &MultiIndex) -> Vec<f64> {
        let m = multinomial(idx).expect("degree 2") as f64;
        (0..self.n)
            .map(|j| {
                let f = self.linear_form(j);
                m * idx
                    .exponents()
                    .iter()
                    .zip(&f)
                    .map(|(&p, c)| c.powi(p as i32))
                    .product::<f64>()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RieszPhase {
    pub theta: Vec<f64>,
    pub x2_coefficient: f64,
    /// Coefficients of `t₁s₁, …, t_d s_d`; the first is normalised to 1.
    pub mixed_coefficients: Vec<f64>,
    pub residual: f64,
    pub rank: usize,
    pub constraints: usize,
    pub monomial_count: usize,
}

/// Nullspace vector keeping `x²` and every `tᵢsᵢ`; the basis vector with the
/// largest minimum `|tᵢsᵢ|` coefficient is used.
pub fn solve_riesz_phase(spec: &RieszPhaseSpec, tol_phase: f64) -> Result<RieszPhase> {
    spec.validate()?;
    let d = spec.d;
    let all = enumerate_multi_indices(2 * d + 1, 2);
    let mut rows = Vec::new();
    let mut mixed_rows = vec![Vec::new(); d];
    let mut x2_row = Vec::new();
    for idx in &all {
        if spec.is_retained(idx) {
            let e = idx.exponents();
            if e[0] == 2 {
                x2_row = spec.row(idx);
            } else {
                let i = (1..=d).find(|&i| e[i] == 1).expect("retained mixed monomial");
                mixed_rows[i - 1] = spec.row(idx);
            }
        } else {
            rows.push(spec.row(idx));
        }
    }
    let m = rows.len();
    let ns = linalg::nullspace(&rows, spec.n);
    if ns.rank < m || ns.basis.is_empty() {
        return Err(Error::RankDeficient { rank: ns.rank, rows: m, cols: spec.n });
    }
    let score = |v: &[f64]| {
        mixed_rows.iter().map(|r| dot(r, v).abs()).fold(f64::INFINITY, f64::min)
    };
    let mut best = (0, score(ns.basis[0].as_slice()));
    for (i, v) in ns.basis.iter().enumerate().skip(1) {
        let s = score(v.as_slice());
        if s > best.1 {
            best = (i, s);
        }
    }
    if best.1 < tol_phase {
        return Err(Error::DegenerateMixed { value: best.1, tol: tol_phase });
    }
    let v = ns.basis[best.0].as_slice();
    let c = dot(&mixed_rows[0], v);
    let theta: Vec<f64> = v.iter().map(|x| x / c).collect();
    Ok(RieszPhase {
        x2_coefficient: dot(&x2_row, &theta),
        mixed_coefficients: mixed_rows.iter().map(|r| dot(r, &theta)).collect(),
        residual: rows.iter().map(|r| dot(r, &theta).abs()).fold(0.0, f64::max),
        theta,
        rank: ns.rank,
        constraints: m,
        monomial_count: all.len(),
    })
}
