//! Degree-k monomials in `x, t1..tk` and their multinomial coefficients.
//!
//! ```bash
//! cargo run --example monomials -- 3
//! ```

use chirplab::phase::{binomial, enumerate_multi_indices, multinomial};

fn main() -> chirplab::Result<()> {
    let k: usize = std::env::args().nth(1).map_or(2, |s| s.parse().expect("k must be an integer"));
    let indices = enumerate_multi_indices(k + 1, k as u32);
    for idx in &indices {
        println!("{idx:<14} {:<20} {}", idx.monomial_name(), multinomial(idx)?);
    }
    println!("{} monomials, C(2k, k) = {}", indices.len(), binomial(2 * k as u64, k as u64).unwrap());
    Ok(())
}
