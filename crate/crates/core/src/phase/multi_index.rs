use std::fmt;

use crate::error::{Error, Result};

/// Exponent tuple `(a₀, a₁, …, a_k)` of a monomial `x^{a₀} t₁^{a₁} ⋯ t_k^{a_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    exponents: Vec<u32>,
    degree: u32,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().sum();
        Self { exponents, degree }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.exponents.len()
    }

    /// `x^k` in `k + 1` variables.
    pub fn pure_first(num_vars: usize, degree: u32) -> Self {
        let mut e = vec![0; num_vars];
        e[0] = degree;
        Self::new(e)
    }

    /// `t₁ ⋯ t_k` in `k + 1` variables.
    pub fn mixed(k: usize) -> Self {
        let mut e = vec![1; k + 1];
        e[0] = 0;
        Self::new(e)
    }

    /// Human-readable form using `x, t1, t2, …`.
    pub fn monomial_name(&self) -> String {
        let mut parts = Vec::new();
        for (i, &a) in self.exponents.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let var = if i == 0 { "x".to_string() } else { format!("t{i}") };
            if a == 1 {
                parts.push(var);
            } else {
                parts.push(format!("{var}^{a}"));
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// All multi-indices with `num_vars` entries summing to `degree`, in
/// lexicographic order with larger leading exponents first
/// (`x², xt, xs, t², ts, s²` for three variables at degree 2).
pub fn enumerate_multi_indices(num_vars: usize, degree: u32) -> Vec<MultiIndex> {
    assert!(num_vars >= 1, "num_vars must be positive");
    let mut out = Vec::new();
    let mut current = vec![0u32; num_vars];
    fill(&mut current, 0, degree, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex::new(current.clone()));
        return;
    }
    for a in (0..=remaining).rev() {
        current[pos] = a;
        fill(current, pos + 1, remaining - a, out);
    }
    current[pos] = 0;
}

/// `degree! / ∏ aᵢ!`, computed as a product of binomials with overflow checks.
pub fn multinomial(index: &MultiIndex) -> Result<u64> {
    let mut acc: u64 = 1;
    let mut partial: u32 = 0;
    for &a in index.exponents() {
        partial += a;
        let b = binomial(partial as u64, a as u64)
            .ok_or(Error::Overflow { degree: index.degree() })?;
        acc = acc.checked_mul(b).ok_or(Error::Overflow { degree: index.degree() })?;
    }
    Ok(acc)
}

/// Binomial coefficient with overflow detection.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_variables_degree_two_in_order() {
        let names: Vec<_> = enumerate_multi_indices(3, 2)
            .iter()
            .map(|m| m.monomial_name())
            .collect();
        assert_eq!(names, ["x^2", "x*t1", "x*t2", "t1^2", "t1*t2", "t2^2"]);
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_multi_indices(2, 1).len(), 2);
        assert_eq!(enumerate_multi_indices(4, 3).len(), 20);
        assert_eq!(enumerate_multi_indices(1, 5).len(), 1);
        assert_eq!(enumerate_multi_indices(3, 0).len(), 1);
    }

    #[test]
    fn count_matches_stars_and_bars() {
        for v in 1..=6usize {
            for d in 0..=6u32 {
                let expect = binomial((v as u64) + d as u64 - 1, d as u64).unwrap();
                assert_eq!(enumerate_multi_indices(v, d).len() as u64, expect);
            }
        }
    }

    #[test]
    fn central_binomials() {
        let expect = [2, 6, 20, 70, 252, 924];
        for k in 1..=6usize {
            assert_eq!(enumerate_multi_indices(k + 1, k as u32).len(), expect[k - 1]);
        }
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(&MultiIndex::new(vec![4, 0, 0])).unwrap(), 1);
        assert_eq!(multinomial(&MultiIndex::new(vec![0, 1, 1])).unwrap(), 2);
        assert_eq!(multinomial(&MultiIndex::new(vec![1, 1, 1])).unwrap(), 6);
    }

    #[test]
    fn multinomial_brute_force_expansion() {
        // Expand (x + t + s)^3 by enumerating all 27 ordered products.
        let mut counts = std::collections::HashMap::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let mut e = vec![0u32; 3];
                    e[a] += 1;
                    e[b] += 1;
                    e[c] += 1;
                    *counts.entry(e).or_insert(0u64) += 1;
                }
            }
        }
        for (e, c) in counts {
            assert_eq!(multinomial(&MultiIndex::new(e)).unwrap(), c);
        }
    }

    #[test]
    fn multinomial_overflow_is_signalled() {
        let big = MultiIndex::new(vec![1; 30]);
        assert!(matches!(multinomial(&big), Err(Error::Overflow { .. })));
        let ok = MultiIndex::new(vec![1; 20]);
        assert_eq!(multinomial(&ok).unwrap(), 2_432_902_008_176_640_000);
    }
}
