//! Fitting `value ≈ c (ln N)^p`, and why an additive offset biases `p`.

use chirplab::experiments::{fit_log_exponent, GrowthSeries};

fn main() -> chirplab::Result<()> {
    let ns = [1e2, 2e2, 3e2, 5e2, 1e3];
    for (label, f) in [
        ("3 (ln N)^2", Box::new(|l: f64| 3.0 * l * l) as Box<dyn Fn(f64) -> f64>),
        ("1.27 ln N", Box::new(|l: f64| 1.27 * l)),
        ("1.27 (ln N - 1.7)", Box::new(|l: f64| 1.27 * (l - 1.7))),
    ] {
        let pairs: Vec<(f64, f64)> = ns.iter().map(|&n: &f64| (n, f(n.ln()))).collect();
        let fit = fit_log_exponent(&GrowthSeries::from_pairs(&pairs)?, 100.0)?;
        println!("{label:<20} exponent {:.4}, constant {:.4}, r² {:.6}", fit.exponent, fit.constant, fit.r_squared);
    }
    Ok(())
}
