//! The k-dimensional cube integral of sin(∏t)/∏t against a tensor
//! midpoint rule, and its growth in ln N.

use chirplab::osc1d::{brute_force_cube_integral, cube_integral, lower_bound_series};

fn main() -> chirplab::Result<()> {
    for (k, n) in [(1u32, 10.0f64), (2, 4.0), (2, 8.0), (3, 2.0)] {
        let reduced = cube_integral(k, n)?;
        let brute = brute_force_cube_integral(k, n, (8.0 * n.powi(k as i32)).ceil() as usize)?;
        println!("k={k} N={n}: reduced {reduced:.8}, tensor rule {brute:.8}");
    }
    for k in 1..=4 {
        let series = lower_bound_series(k, &[1e2, 1e3, 1e4, 1e5])?;
        let ratios: Vec<String> = series.iter().map(|p| format!("{:.4}", p.ratio)).collect();
        println!("k={k}: value / (ln N)^(k-1) = {}", ratios.join(", "));
    }
    Ok(())
}
