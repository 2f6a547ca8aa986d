use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::system::{build_constraint_matrix, constraint_count};
use crate::error::{Error, Result};
use crate::linalg;

pub const SAMPLE_LO: f64 = 2.0;
pub const SAMPLE_HI: f64 = 10.0;
pub const DEFAULT_MARGIN: f64 = 0.05;
const MAX_REJECTIONS: usize = 1000;

/// The `k` direction vectors `α⃗₁, …, α⃗_k ∈ ℝ^{n−1}` of the product symbol,
/// stored row-wise (`entries[i][j] = α_{i+1, j+1}`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaMatrix {
    k: usize,
    n: usize,
    entries: Vec<Vec<f64>>,
}

impl AlphaMatrix {
    pub fn new(n: usize, entries: Vec<Vec<f64>>) -> Result<Self> {
        let k = entries.len();
        if k == 0 || n < 2 {
            return Err(Error::DimensionMismatch(format!(
                "need k >= 1 and n >= 2, got k = {k}, n = {n}"
            )));
        }
        if let Some(bad) = entries.iter().find(|r| r.len() != n - 1) {
            return Err(Error::DimensionMismatch(format!(
                "alpha rows must have n - 1 = {} entries, found {}",
                n - 1,
                bad.len()
            )));
        }
        if entries.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("alpha entries must be finite".into()));
        }
        Ok(Self { k, n, entries })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<f64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i][j]
    }

    /// Coefficients of `t₁, …, t_k` in the argument of `f_{j+1}`.
    pub fn column(&self, j: usize) -> Vec<f64> {
        self.entries.iter().map(|r| r[j]).collect()
    }

    /// Entry margins: away from 0 and 1, and pairwise distinct within rows.
    pub fn satisfies_margins(&self, delta: f64) -> bool {
        self.entries.iter().all(|row| row_margins_hold(row, delta))
    }

    /// Rank of the monomial constraint matrix and whether it is maximal.
    pub fn rank_certificate(&self) -> (usize, bool) {
        let sys = build_constraint_matrix(self);
        let r = linalg::rank(&sys.rows, self.n);
        (r, r == constraint_count(self.k).min(self.n))
    }

    pub fn is_generic(&self, delta: f64) -> bool {
        self.satisfies_margins(delta) && self.rank_certificate().1
    }
}

fn row_margins_hold(row: &[f64], delta: f64) -> bool {
    row.iter().all(|&a| a.abs() >= delta && (a - 1.0).abs() >= delta)
        && row.iter().enumerate().all(|(i, a)| row[i + 1..].iter().all(|b| (a - b).abs() >= delta))
}

/// Draws entries uniformly from `[2, 10]` with a seeded ChaCha stream.
///
/// Rows are redrawn one at a time until their margins hold, then the whole
/// matrix is redrawn if the rank certificate fails. Every redraw counts
/// towards the rejection budget.
pub fn sample_generic_alphas(k: usize, n: usize, seed: u64, delta: f64) -> Result<AlphaMatrix> {
    if k == 0 || n < 2 {
        return Err(Error::InvalidInput(format!("need k >= 1 and n >= 2, got k = {k}, n = {n}")));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidInput(format!("margin must be positive, got {delta}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejections = 0;
    let failure = Error::GenericityFailure { attempts: MAX_REJECTIONS, margin: delta };
    loop {
        let mut entries = Vec::with_capacity(k);
        while entries.len() < k {
            let row: Vec<f64> = (0..n - 1).map(|_| rng.gen_range(SAMPLE_LO..SAMPLE_HI)).collect();
            if row_margins_hold(&row, delta) {
                entries.push(row);
            } else {
                rejections += 1;
                if rejections > MAX_REJECTIONS {
                    return Err(failure);
                }
            }
        }
        let candidate = AlphaMatrix::new(n, entries)?;
        if candidate.rank_certificate().1 {
            return Ok(candidate);
        }
        rejections += 1;
        if rejections > MAX_REJECTIONS {
            return Err(failure);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampled_k2_n5_passes_certificate() {
        let a = sample_generic_alphas(2, 5, 1, 0.05).unwrap();
        assert_eq!(a.entries().len(), 2);
        assert_eq!(a.entries()[0].len(), 4);
        assert_eq!(a.rank_certificate(), (4, true));
        assert!(a.entries().iter().flatten().all(|v| (2.0..10.0).contains(v)));
    }

    #[test]
    fn single_entry_case() {
        let a = sample_generic_alphas(1, 2, 99, 0.05).unwrap();
        assert_eq!(a.entries(), &[vec![a.get(0, 0)]]);
        assert!((2.0..10.0).contains(&a.get(0, 0)));
    }

    #[test]
    fn oversized_margin_fails() {
        let r = sample_generic_alphas(2, 5, 3, 5.0);
        assert!(matches!(r, Err(Error::GenericityFailure { .. })));
    }

    #[test]
    fn deterministic_for_seed() {
        let a = sample_generic_alphas(3, 19, 7, 0.05).unwrap();
        let b = sample_generic_alphas(3, 19, 7, 0.05).unwrap();
        assert_eq!(a, b);
        let c = sample_generic_alphas(3, 19, 8, 0.05).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn shape_errors() {
        assert!(AlphaMatrix::new(4, vec![vec![1.0, 2.0]]).is_err());
        assert!(AlphaMatrix::new(1, vec![vec![]]).is_err());
    }
}
