//! Solve for chirp phases that leave only `x^k` and `t1⋯tk` in the combined
//! phase polynomial, then confirm with the term-by-term expansion.

use chirplab::phase::oracle::expand_polynomial_oracle;
use chirplab::phase::{sample_generic_alphas, solve_phase, solve_phase_n4k2};

fn main() -> chirplab::Result<()> {
    for (k, n) in [(2, 5), (2, 8), (3, 19)] {
        let alphas = sample_generic_alphas(k, n, 7, 0.05)?;
        let phase = solve_phase(&alphas, 1e-9)?;
        println!("k={k} n={n}: rank {} of {}, residual {:.2e}", phase.rank, phase.constraints, phase.residual);
        let nonzero: Vec<String> = expand_polynomial_oracle(&phase.theta, &alphas)
            .into_iter()
            .filter(|(_, c)| c.abs() > 1e-8 * phase.theta_norm())
            .map(|(idx, c)| format!("{c:+.6} {}", idx.monomial_name()))
            .collect();
        println!("  surviving terms: {}", nonzero.join(", "));
    }

    // With n = 4 the general system only has the zero solution.
    let alphas = sample_generic_alphas(2, 4, 7, 0.05)?;
    println!("k=2 n=4 general solver: {}", solve_phase(&alphas, 1e-9).unwrap_err());
    let f = solve_phase_n4k2(&alphas, 1e-9)?;
    println!(
        "k=2 n=4 dedicated solver: {:.6} t1^2 {} t1*t2 (reflected: {})",
        f.alpha_coef,
        if f.reflected { "-" } else { "+" },
        f.reflected
    );
    Ok(())
}
