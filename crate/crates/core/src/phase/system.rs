use serde::{Deserialize, Serialize};

use super::alphas::AlphaMatrix;
use super::multi_index::{binomial, enumerate_multi_indices, multinomial, MultiIndex};
use crate::error::{Error, Result};
use crate::linalg::{self, dot};

pub const DEFAULT_TOL_PHASE: f64 = 1e-9;

/// The linear functional `θ ↦ coefficient of one monomial`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientRow {
    pub index: MultiIndex,
    pub row: Vec<f64>,
}

impl CoefficientRow {
    pub fn apply(&self, theta: &[f64]) -> f64 {
        dot(&self.row, theta)
    }
}

/// Constrained rows plus the two retained functionals.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub indices: Vec<MultiIndex>,
    pub rows: Vec<Vec<f64>>,
    /// Row of `t₁ ⋯ t_k`.
    pub mixed: CoefficientRow,
    /// Row of `x^k`.
    pub pure_x: CoefficientRow,
}

/// Number of constrained monomials, `C(2k, k) − 2`.
pub fn constraint_count(k: usize) -> usize {
    binomial(2 * k as u64, k as u64).expect("k is small") as usize - 2
}

/// `row₀ = multinomial(a)`, `row_j = multinomial(a) · ∏ᵢ α_{ij}^{aᵢ}`.
pub fn coefficient_row(index: &MultiIndex, alphas: &AlphaMatrix) -> Result<CoefficientRow> {
    let k = alphas.k();
    if index.num_vars() != k + 1 || index.degree() as usize != k {
        return Err(Error::DimensionMismatch(format!(
            "index {index} does not match k = {k} (needs {} exponents summing to {k})",
            k + 1
        )));
    }
    let m = multinomial(index)? as f64;
    let e = index.exponents();
    let mut row = Vec::with_capacity(alphas.n());
    row.push(m);
    for j in 0..alphas.n() - 1 {
        let prod: f64 = (0..k).map(|i| alphas.get(i, j).powi(e[i + 1] as i32)).product();
        row.push(m * prod);
    }
    Ok(CoefficientRow { index: index.clone(), row })
}

/// Rows for every degree-`k` monomial except `x^k` and `t₁⋯t_k`.
pub fn build_constraint_matrix(alphas: &AlphaMatrix) -> ConstraintSystem {
    let k = alphas.k();
    let pure = MultiIndex::pure_first(k + 1, k as u32);
    let mixed = MultiIndex::mixed(k);
    let mut indices = Vec::new();
    let mut rows = Vec::new();
    for idx in enumerate_multi_indices(k + 1, k as u32) {
        if idx == pure || idx == mixed {
            continue;
        }
        rows.push(coefficient_row(&idx, alphas).expect("shape is consistent").row);
        indices.push(idx);
    }
    ConstraintSystem {
        indices,
        rows,
        mixed: coefficient_row(&mixed, alphas).expect("shape is consistent"),
        pure_x: coefficient_row(&pure, alphas).expect("shape is consistent"),
    }
}

/// Solution of the monomial-vanishing system.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseVector {
    /// `(θ₀, θ₁, …, θ_{n−1})`: chirp coefficients of `f, f₁, …, f_{n−1}`.
    pub theta: Vec<f64>,
    pub mixed_coefficient: f64,
    pub xk_coefficient: f64,
    /// Largest absolute constrained coefficient.
    pub residual: f64,
    pub rank: usize,
    pub constraints: usize,
}

impl PhaseVector {
    pub fn theta_norm(&self) -> f64 {
        linalg::norm(&self.theta)
    }

    pub fn residual_within(&self, tol_phase: f64) -> bool {
        self.residual <= tol_phase * self.theta_norm()
    }
}

fn max_abs_coefficient(rows: &[Vec<f64>], theta: &[f64]) -> f64 {
    rows.iter().map(|r| dot(r, theta).abs()).fold(0.0, f64::max)
}

/// Chooses `θ` in the nullspace of the constraint matrix with unit
/// `t₁⋯t_k` coefficient.
///
/// Among the orthonormal nullspace basis vectors the one with the largest
/// `|mixed coefficient|` wins (lowest index on ties) and is then rescaled.
pub fn solve_phase(alphas: &AlphaMatrix, tol_phase: f64) -> Result<PhaseVector> {
    let sys = build_constraint_matrix(alphas);
    let n = alphas.n();
    let m = sys.rows.len();
    let ns = linalg::nullspace(&sys.rows, n);
    if ns.rank < m || ns.basis.is_empty() {
        return Err(Error::RankDeficient { rank: ns.rank, rows: m, cols: n });
    }
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in ns.basis.iter().enumerate() {
        let c = sys.mixed.apply(v.as_slice());
        if best.is_none_or(|(_, b)| c.abs() > b.abs()) {
            best = Some((i, c));
        }
    }
    let (i, c) = best.expect("nonempty basis");
    if c.abs() < tol_phase {
        return Err(Error::DegenerateMixed { value: c, tol: tol_phase });
    }
    let theta: Vec<f64> = ns.basis[i].iter().map(|v| v / c).collect();
    Ok(PhaseVector {
        mixed_coefficient: sys.mixed.apply(&theta),
        xk_coefficient: sys.pure_x.apply(&theta),
        residual: max_abs_coefficient(&sys.rows, &theta),
        theta,
        rank: ns.rank,
        constraints: m,
    })
}

/// Phase data for the `k = 2, n = 4` construction, where only
/// `x t₁, x t₂, t₂²` are killed and the phase reduces to `α t₁² + β t₁ t₂`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FresnelPhase {
    pub phase: PhaseVector,
    /// Coefficient of `t₁²`, normalised positive.
    pub alpha_coef: f64,
    /// Coefficient of `t₁ t₂` after the optional reflection `t₂ ↦ −t₂`.
    pub beta_coef: f64,
    /// True when `θ` itself produces `−t₁t₂`; the reflection `t₂ ↦ −t₂`
    /// preserves `dt₂/t₂` and the killed monomials, and flips it to `+1`.
    pub reflected: bool,
}

pub fn solve_phase_n4k2(alphas: &AlphaMatrix, tol_phase: f64) -> Result<FresnelPhase> {
    if alphas.k() != 2 || alphas.n() != 4 {
        return Err(Error::DimensionMismatch(format!(
            "special solver needs k = 2, n = 4, got k = {}, n = {}",
            alphas.k(),
            alphas.n()
        )));
    }
    let row = |e: [u32; 3]| coefficient_row(&MultiIndex::new(e.to_vec()), alphas).map(|r| r.row);
    let rows = vec![row([1, 1, 0])?, row([1, 0, 1])?, row([0, 0, 2])?];
    let alpha_row = row([0, 2, 0])?;
    let beta_row = row([0, 1, 1])?;
    let ns = linalg::nullspace(&rows, 4);
    if ns.rank < 3 || ns.basis.is_empty() {
        return Err(Error::RankDeficient { rank: ns.rank, rows: 3, cols: 4 });
    }
    let v = ns.basis[0].as_slice();
    let b_unit = dot(&beta_row, v);
    if b_unit.abs() < tol_phase {
        return Err(Error::DegenerateMixed { value: b_unit, tol: tol_phase });
    }
    let a_unit = dot(&alpha_row, v);
    if a_unit.abs() < tol_phase {
        return Err(Error::DegenerateQuadratic { value: a_unit, tol: tol_phase });
    }
    let scale = a_unit.signum() / b_unit.abs();
    let theta: Vec<f64> = v.iter().map(|x| x * scale).collect();
    let alpha_coef = dot(&alpha_row, &theta);
    let beta_raw = dot(&beta_row, &theta);
    let sys = build_constraint_matrix(alphas);
    let phase = PhaseVector {
        mixed_coefficient: beta_raw.abs(),
        xk_coefficient: sys.pure_x.apply(&theta),
        residual: max_abs_coefficient(&rows, &theta),
        theta,
        rank: ns.rank,
        constraints: 3,
    };
    Ok(FresnelPhase { phase, alpha_coef, beta_coef: beta_raw.abs(), reflected: beta_raw < 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::alphas::sample_generic_alphas;

    #[test]
    fn row_of_pure_t1_power() {
        let a = sample_generic_alphas(3, 19, 2, 0.05).unwrap();
        let r = coefficient_row(&MultiIndex::new(vec![0, 3, 0, 0]), &a).unwrap();
        assert_eq!(r.row[0], 1.0);
        for j in 0..18 {
            assert!((r.row[j + 1] - a.get(0, j).powi(3)).abs() < 1e-12);
        }
    }

    #[test]
    fn row_of_pure_x_power_is_ones() {
        let a = sample_generic_alphas(2, 6, 2, 0.05).unwrap();
        let r = coefficient_row(&MultiIndex::new(vec![2, 0, 0]), &a).unwrap();
        assert!(r.row.iter().all(|&v| v == 1.0));
    }

    #[test]
    fn row_shape_mismatch() {
        let a = sample_generic_alphas(2, 5, 2, 0.05).unwrap();
        assert!(coefficient_row(&MultiIndex::new(vec![1, 1]), &a).is_err());
        assert!(coefficient_row(&MultiIndex::new(vec![1, 1, 1]), &a).is_err());
    }

    #[test]
    fn matrix_shapes() {
        let a = sample_generic_alphas(2, 5, 1, 0.05).unwrap();
        let s = build_constraint_matrix(&a);
        assert_eq!((s.rows.len(), s.rows[0].len()), (4, 5));
        let names: Vec<_> = s.indices.iter().map(|i| i.monomial_name()).collect();
        assert_eq!(names, ["x*t1", "x*t2", "t1^2", "t2^2"]);

        let a1 = sample_generic_alphas(1, 3, 1, 0.05).unwrap();
        assert!(build_constraint_matrix(&a1).rows.is_empty());

        let a3 = sample_generic_alphas(3, 19, 1, 0.05).unwrap();
        assert_eq!(build_constraint_matrix(&a3).rows.len(), 18);
    }

    #[test]
    fn k1_has_no_constraints() {
        let a = sample_generic_alphas(1, 4, 5, 0.05).unwrap();
        let p = solve_phase(&a, DEFAULT_TOL_PHASE).unwrap();
        assert_eq!(p.residual, 0.0);
        assert!((p.mixed_coefficient - 1.0).abs() < 1e-15);
    }

    #[test]
    fn k2_n5_solution() {
        let a = sample_generic_alphas(2, 5, 1, 0.05).unwrap();
        let p = solve_phase(&a, DEFAULT_TOL_PHASE).unwrap();
        assert!(p.residual_within(1e-9), "residual {}", p.residual);
        assert!((p.mixed_coefficient - 1.0).abs() < 1e-12);
        assert_eq!(p.rank, 4);
    }

    #[test]
    fn square_k2_n4_system_has_no_phase() {
        let a = sample_generic_alphas(2, 4, 1, 0.05).unwrap();
        assert!(matches!(solve_phase(&a, DEFAULT_TOL_PHASE), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn fresnel_phase_normalisation() {
        let a = sample_generic_alphas(2, 4, 11, 0.05).unwrap();
        let f = solve_phase_n4k2(&a, DEFAULT_TOL_PHASE).unwrap();
        assert!(f.alpha_coef > 0.0);
        assert!((f.beta_coef - 1.0).abs() < 1e-12);
        assert!(f.phase.residual <= 1e-9 * f.phase.theta_norm());
    }

    #[test]
    fn fresnel_duplicate_rows_rank_deficient() {
        let row = vec![2.5, 3.5, 7.25];
        let a = AlphaMatrix::new(4, vec![row.clone(), row]).unwrap();
        assert!(matches!(solve_phase_n4k2(&a, DEFAULT_TOL_PHASE), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn fresnel_sign_flip_is_normalised() {
        // −θ flips every coefficient; the solver always reports α > 0.
        let a = sample_generic_alphas(2, 4, 12, 0.05).unwrap();
        let f = solve_phase_n4k2(&a, DEFAULT_TOL_PHASE).unwrap();
        let neg: Vec<f64> = f.phase.theta.iter().map(|v| -v).collect();
        let alpha_row = coefficient_row(&MultiIndex::new(vec![0, 2, 0]), &a).unwrap();
        assert!(alpha_row.apply(&neg) < 0.0);
        assert!((alpha_row.apply(&f.phase.theta) - f.alpha_coef).abs() < 1e-12);
    }
}
