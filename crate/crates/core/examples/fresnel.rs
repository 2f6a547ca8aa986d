//! The k = 2, n = 4 case: the truncated value grows like (2/π) ln Λ.

use chirplab::experiments::fresnel_value;
use chirplab::phase::{sample_generic_alphas, solve_phase_n4k2};

fn main() -> chirplab::Result<()> {
    let alphas = sample_generic_alphas(2, 4, 1, 0.05)?;
    let phase = solve_phase_n4k2(&alphas, 1e-9)?;
    println!("phase {:.6} t1^2 + t1 t2", phase.alpha_coef);
    for lambda in [1.0, 10.0, 1e2, 1e3, 1e4, 1e5] {
        let v = fresnel_value(phase.alpha_coef, phase.beta_coef, lambda)?;
        println!("Λ = {lambda:>7}: {v:.6}  (2/π) ln Λ = {:.6}", 2.0 / std::f64::consts::PI * f64::ln(lambda));
    }
    Ok(())
}
