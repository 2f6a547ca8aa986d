//! Rank and nullspace through the singular value decomposition.

use nalgebra::{DMatrix, DVector};

/// Relative singular-value threshold below which a direction counts as null.
pub const RANK_RTOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct NullspaceReport {
    pub rank: usize,
    /// Orthonormal basis of the nullspace, one vector per entry.
    pub basis: Vec<DVector<f64>>,
    pub singular_values: Vec<f64>,
}

/// Numerical rank and nullspace of `rows` (an `m × n` matrix given row-wise).
///
/// Rank is the number of singular values above `RANK_RTOL · σ_max`. An empty
/// row set has rank 0 and the canonical basis as nullspace.
pub fn nullspace(rows: &[Vec<f64>], cols: usize) -> NullspaceReport {
    let m = rows.len();
    if m == 0 {
        let basis = (0..cols)
            .map(|j| DVector::from_fn(cols, |i, _| if i == j { 1.0 } else { 0.0 }))
            .collect();
        return NullspaceReport { rank: 0, basis, singular_values: vec![] };
    }
    // Pad with zero rows so V is a full n × n orthogonal factor.
    let padded = m.max(cols);
    let a = DMatrix::from_fn(padded, cols, |i, j| if i < m { rows[i][j] } else { 0.0 });
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let threshold = RANK_RTOL * smax;
    let mut rank = 0;
    let mut basis = Vec::new();
    for (i, s) in sv.iter().enumerate() {
        if *s > threshold && smax > 0.0 {
            rank += 1;
        } else {
            basis.push(v_t.row(i).transpose().into_owned());
        }
    }
    NullspaceReport { rank, basis, singular_values: sv }
}

/// Numerical rank of a row set.
pub fn rank(rows: &[Vec<f64>], cols: usize) -> usize {
    nullspace(rows, cols).rank
}

/// Solves a small dense square system; `None` when singular.
pub fn solve_square(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let n = b.len();
    let m = DMatrix::from_fn(n, n, |i, j| a[i][j]);
    let lu = m.lu();
    lu.solve(&DVector::from_column_slice(b)).map(|x| x.iter().copied().collect())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_single_row() {
        let r = nullspace(&[vec![1.0, 1.0, 0.0]], 3);
        assert_eq!(r.rank, 1);
        assert_eq!(r.basis.len(), 2);
        for v in &r.basis {
            assert!((v[0] + v[1]).abs() < 1e-14);
            assert!((v.norm() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn duplicate_rows_lose_rank() {
        let r = nullspace(&[vec![1.0, 2.0, 3.0], vec![2.0, 4.0, 6.0]], 3);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn empty_rows_give_identity() {
        let r = nullspace(&[], 2);
        assert_eq!(r.rank, 0);
        assert_eq!(r.basis.len(), 2);
    }

    #[test]
    fn square_solve() {
        let x = solve_square(&[vec![2.0, 1.0], vec![1.0, 3.0]], &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-14 && (x[1] - 1.4).abs() < 1e-14);
        assert!(solve_square(&[vec![1.0, 1.0], vec![1.0, 1.0]], &[1.0, 1.0]).is_none());
    }
}
