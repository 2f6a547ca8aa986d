//! End-to-end sweep: `(1/π²)|∫_{D_x} sin(ts)/(ts)|` over N and the window
//! points, with the growth fit against ln N.

use chirplab::experiments::{run_counterexample_experiment, ExperimentConfig};

fn main() -> chirplab::Result<()> {
    let config = ExperimentConfig { seed: Some(1), n: Some(5), ..Default::default() };
    let report = run_counterexample_experiment(&config)?;
    println!("N,value,log_N,ratio");
    for p in &report.curve {
        println!("{},{:.6},{:.4},{:.4}", p.n, p.value, p.log_n, p.ratio);
    }
    // Slope in ln N between the last two cutoffs.
    let [.., a, b] = report.curve[..] else { unreachable!() };
    println!("increment per unit ln N: {:.4} (4/π = {:.4})", (b.value - a.value) / (b.log_n - a.log_n), 4.0 / std::f64::consts::PI);
    if let Some(f) = report.fit {
        println!("fitted exponent {:.4}, r² {:.4}", f.exponent, f.r_squared);
    }
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    Ok(())
}
