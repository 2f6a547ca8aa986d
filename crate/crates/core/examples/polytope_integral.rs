//! `∫_D sin(t1⋯tk)/(t1⋯tk) dt` by slicing and by level sets, and its split
//! into inscribed cube, complement and dyadic shells.

use chirplab::geometry::support_polytope;
use chirplab::integrate::{
    complement_integral, dyadic_shell_decomposition, sinprod_by_level_sets, sinprod_by_slicing, QuadSpec,
};
use chirplab::phase::sample_generic_alphas;

fn main() -> chirplab::Result<()> {
    let spec = QuadSpec::default();
    let alphas = sample_generic_alphas(2, 5, 1, 0.05)?;
    let poly = support_polytope(0.0, &alphas, 300.0)?;
    println!("k=2 slicing    {:.8}", sinprod_by_slicing(&poly, &spec)?);
    println!("k=2 level sets {:.8}", sinprod_by_level_sets(&poly, &spec)?);
    println!("k=2 complement {:.8}", complement_integral(2, &poly, &spec)?);
    for s in dyadic_shell_decomposition(2, &poly, &spec)? {
        println!("  |t|∞ in ({:>5}, {:>5}]: {:+.6}", s.inner, s.outer, s.value);
    }

    let solid = support_polytope(0.0, &sample_generic_alphas(3, 19, 1, 0.05)?, 100.0)?;
    let start = std::time::Instant::now();
    let v = sinprod_by_level_sets(&solid, &spec)?;
    println!("k=3 level sets {v:.6} in {:.2}s", start.elapsed().as_secs_f64());
    Ok(())
}
