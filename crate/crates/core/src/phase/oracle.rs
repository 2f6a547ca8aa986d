//! Direct polynomial expansion, independent of the multinomial formula.
//!
//! Each power of a linear form is built by repeated multiplication of sparse
//! polynomials, so the coefficients come from plain bookkeeping rather than
//! from `coefficient_row`.

use std::collections::BTreeMap;

use super::alphas::AlphaMatrix;
use super::multi_index::MultiIndex;

pub type Polynomial = BTreeMap<Vec<u32>, f64>;

fn multiply_by_linear(p: &Polynomial, form: &[f64]) -> Polynomial {
    let mut out = Polynomial::new();
    for (e, c) in p {
        for (v, &a) in form.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[v] += 1;
            *out.entry(e2).or_insert(0.0) += c * a;
        }
    }
    out
}

/// `Σ_j weights[j] · (forms[j] · vars)^degree`, expanded term by term.
pub fn expand_linear_powers(forms: &[Vec<f64>], weights: &[f64], degree: u32) -> Polynomial {
    assert_eq!(forms.len(), weights.len());
    let num_vars = forms.first().map_or(0, |f| f.len());
    let mut total = Polynomial::new();
    for (form, &w) in forms.iter().zip(weights) {
        let mut p = Polynomial::new();
        p.insert(vec![0; num_vars], 1.0);
        for _ in 0..degree {
            p = multiply_by_linear(&p, form);
        }
        for (e, c) in p {
            *total.entry(e).or_insert(0.0) += w * c;
        }
    }
    total
}

/// Coefficients of `θ₀(x + Σtᵢ)^k + Σ_j θ_j(x + Σᵢ α_{ij} tᵢ)^k`.
pub fn expand_polynomial_oracle(theta: &[f64], alphas: &AlphaMatrix) -> BTreeMap<MultiIndex, f64> {
    assert_eq!(theta.len(), alphas.n(), "theta must have n entries");
    let k = alphas.k();
    let mut forms = vec![vec![1.0; k + 1]];
    for j in 0..alphas.n() - 1 {
        let mut f = vec![1.0];
        f.extend(alphas.column(j));
        forms.push(f);
    }
    expand_linear_powers(&forms, theta, k as u32)
        .into_iter()
        .map(|(e, c)| (MultiIndex::new(e), c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::{multinomial, sample_generic_alphas};

    #[test]
    fn unit_theta_gives_multinomials() {
        let a = sample_generic_alphas(3, 19, 4, 0.05).unwrap();
        let mut theta = vec![0.0; 19];
        theta[0] = 1.0;
        let p = expand_polynomial_oracle(&theta, &a);
        assert_eq!(p.len(), 20);
        for (idx, c) in p {
            assert_eq!(c, multinomial(&idx).unwrap() as f64);
        }
    }

    #[test]
    fn hand_expansion_k2() {
        // θ = (1, 2, 0, …): (x+t+s)² + 2(x + a t + b s)².
        let a = AlphaMatrix::new(3, vec![vec![3.0, 5.0], vec![4.0, 6.0]]).unwrap();
        let p = expand_polynomial_oracle(&[1.0, 2.0, 0.0], &a);
        let get = |e: [u32; 3]| p[&MultiIndex::new(e.to_vec())];
        assert_eq!(p.len(), 6);
        assert_eq!(get([2, 0, 0]), 3.0);
        assert_eq!(get([1, 1, 0]), 2.0 + 2.0 * 2.0 * 3.0);
        assert_eq!(get([1, 0, 1]), 2.0 + 2.0 * 2.0 * 4.0);
        assert_eq!(get([0, 2, 0]), 1.0 + 2.0 * 9.0);
        assert_eq!(get([0, 1, 1]), 2.0 + 2.0 * 2.0 * 12.0);
        assert_eq!(get([0, 0, 2]), 1.0 + 2.0 * 16.0);
    }
}
