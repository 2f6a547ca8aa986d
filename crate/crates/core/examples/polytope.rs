//! Support polytope of the counterexample: vertices, inscribed cube,
//! bounding box and slices.

use chirplab::geometry::support_polytope;
use chirplab::phase::sample_generic_alphas;

fn main() -> chirplab::Result<()> {
    let alphas = sample_generic_alphas(2, 5, 1, 0.05)?;
    let n = 100.0;
    let poly = support_polytope(0.03 * n, &alphas, n)?;
    let verts = poly.vertices()?;
    println!("{} strips, {} vertices", poly.strips.len(), verts.len());
    for v in &verts {
        println!("  ({:+9.4}, {:+9.4})", v[0], v[1]);
    }
    let c = poly.inscribed_cube_side()?;
    let bx = poly.circumscribed_box()?;
    println!("inscribed half side {c:.4}, bounding radius {:.4}", bx.radius());
    for t1 in [-20.0, 0.0, 5.0, 20.0] {
        match poly.slice_interval(&[t1]) {
            Some((lo, hi)) => println!("t1 = {t1:+}: t2 in [{lo:.4}, {hi:.4}]"),
            None => println!("t1 = {t1:+}: empty"),
        }
    }

    let solid = support_polytope(0.0, &sample_generic_alphas(3, 19, 1, 0.05)?, n)?;
    println!("k=3: {} vertices, inscribed half side {:.4}", solid.vertices()?.len(), solid.inscribed_cube_side()?);
    Ok(())
}
