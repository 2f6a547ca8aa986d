//! Direct principal-value quadrature of the chirp kernel at small N,
//! compared with the sine part used by the sweeps.

use chirplab::experiments::{run_oracle_crosscheck, ExperimentConfig};
use chirplab::integrate::{pv_reference_1d, pv_tensor_oracle, ChirpSpec};
use chirplab::phase::AlphaMatrix;
use num_complex::Complex64;

fn main() -> chirplab::Result<()> {
    // k = 1: the classical truncated Hilbert transform of two chirps.
    let alphas = AlphaMatrix::new(2, vec![vec![2.5]])?;
    let chirps = [ChirpSpec::new(0.3, 1, 8.0)?, ChirpSpec::new(-0.2, 1, 8.0)?];
    let x = 0.4;
    let grid = pv_tensor_oracle(1, &alphas, &chirps, x, 100_000)?;
    let f = |t: f64| chirps[0].eval(x + t) * chirps[1].eval(x + 2.5 * t);
    let reference = pv_reference_1d(f, (-8.0 - x) / 2.5, (8.0 - x) / 2.5, 1e-12, 200)?
        * Complex64::new(0.0, 1.0 / std::f64::consts::PI);
    println!("k=1 grid {grid:.8}, adaptive {reference:.8}");

    let config = ExperimentConfig { seed: Some(1), n: Some(4), n_list: Some(vec![10.0]), ..Default::default() };
    let report = run_oracle_crosscheck(&config)?;
    for (name, value) in &report.details {
        println!("{name} = {value:.6}");
    }
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(())
}
