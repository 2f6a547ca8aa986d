//! Sine and cosine integrals and the iterated averages `H^l F` of sinc.

use chirplab::osc1d::{cisi, iterated_average, iterated_average_at};

fn main() -> chirplab::Result<()> {
    for x in [0.5, 1.0, 4.0, 10.0, 100.0, 1e4] {
        let (ci, si) = cisi(x);
        println!("x = {x:>8}: Si = {si:.15}, Ci = {ci:+.15}");
    }

    let table = iterated_average(2, 1e4, 64)?;
    for x in [0.1, 1.0, 10.0, 1e3] {
        println!("H²F({x}) = {:.10} (table {:.10})", iterated_average_at(2, x), table.interpolate(x));
    }
    Ok(())
}
