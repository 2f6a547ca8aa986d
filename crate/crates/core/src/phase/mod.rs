//! Chirp phase vectors.
//!
//! Plugging `f = e^{iθ₀ x^k}` and `f_j = e^{iθ_j x^k}` into the kernel form of
//! the operator produces the homogeneous degree-`k` polynomial
//!
//! ```text
//! θ₀ (x + t₁ + … + t_k)^k + Σ_j θ_j (x + α_{1j} t₁ + … + α_{kj} t_k)^k
//! ```
//!
//! in the `k + 1` variables `x, t₁, …, t_k`. Every monomial coefficient is a
//! linear functional of `θ`; this module builds those functionals and picks a
//! `θ` that kills all of them except the ones of `x^k` and `t₁⋯t_k`.

mod alphas;
mod multi_index;
pub mod oracle;
mod riesz;
mod system;

pub use alphas::{sample_generic_alphas, AlphaMatrix, DEFAULT_MARGIN, SAMPLE_HI, SAMPLE_LO};
pub use multi_index::{binomial, enumerate_multi_indices, multinomial, MultiIndex};
pub use riesz::{riesz_constraint_count, riesz_min_n, riesz_monomial_count, solve_riesz_phase, RieszPhase, RieszPhaseSpec};
pub use system::{
    build_constraint_matrix, coefficient_row, constraint_count, solve_phase, solve_phase_n4k2,
    CoefficientRow, ConstraintSystem, FresnelPhase, PhaseVector, DEFAULT_TOL_PHASE,
};
