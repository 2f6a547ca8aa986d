//! Recursive slicing with the last coordinate integrated in closed form.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::geometry::{BoundingBox, ConvexPolygon, SupportPolytope};
use crate::osc1d::{cosine_integral, sine_integral};
use crate::quad::adaptive;

use super::QuadSpec;

/// `∫_a^b sin(P s)/(P s) ds`, equal to `b − a` at `P = 0`.
pub fn closure(p: f64, a: f64, b: f64) -> f64 {
    let m = a.abs().max(b.abs());
    let x = p * m;
    if x.abs() < 1e-2 {
        let p2 = p * p;
        let (a3, b3) = (a * a * a, b * b * b);
        let (a5, b5) = (a3 * a * a, b3 * b * b);
        let (a7, b7) = (a5 * a * a, b5 * b * b);
        (b - a) - p2 * (b3 - a3) / 18.0 + p2 * p2 * (b5 - a5) / 600.0 - p2 * p2 * p2 * (b7 - a7) / 35_280.0
    } else {
        (sine_integral(p * b) - sine_integral(p * a)) / p
    }
}

/// Vertex-based bounds, or `None` when the polytope is empty.
pub(crate) fn bounds_or_empty(poly: &SupportPolytope) -> Result<Option<BoundingBox>> {
    let verts = poly.vertices()?;
    if verts.is_empty() {
        return Ok(None);
    }
    poly.circumscribed_box().map(Some)
}

pub(crate) fn polygon_of(poly: &SupportPolytope, bx: &BoundingBox, dims: (usize, usize)) -> Option<ConvexPolygon> {
    let pad = 1e-6 * (bx.radius() + 1.0);
    let lo = [bx.lo[dims.0] - pad, bx.lo[dims.1] - pad];
    let hi = [bx.hi[dims.0] + pad, bx.hi[dims.1] + pad];
    ConvexPolygon::from_polytope(poly, lo, hi)
}

/// Breakpoints refined so no panel is wider than `width`; `0` is inserted
/// when it lies inside.
pub(crate) fn refine(mut points: Vec<f64>, width: f64) -> Vec<f64> {
    if points.len() < 2 {
        return points;
    }
    let (lo, hi) = (points[0], points[points.len() - 1]);
    if lo < 0.0 && hi > 0.0 {
        points.push(0.0);
    }
    points.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    points.dedup();
    let mut out = vec![points[0]];
    for w in points.windows(2) {
        let pieces = ((w[1] - w[0]) / width).ceil().max(1.0) as usize;
        let h = (w[1] - w[0]) / pieces as f64;
        for i in 1..pieces {
            out.push(w[0] + i as f64 * h);
        }
        out.push(w[1]);
    }
    out
}

/// Largest `|d/dt (t · y(t))|` over both chains of the polygon.
fn chain_rate(poly: &ConvexPolygon) -> f64 {
    let xs = poly.breakpoints();
    let mut rate: f64 = 0.0;
    for w in xs.windows(2) {
        let (l, r) = (w[0], w[1]);
        if r - l <= 0.0 {
            continue;
        }
        let eps = 1e-9 * (r - l);
        let (Some((al, bl)), Some((ar, br))) = (poly.slice_at(l + eps), poly.slice_at(r - eps)) else {
            continue;
        };
        for (yl, yr) in [(al, ar), (bl, br)] {
            let slope = (yr - yl) / (r - l);
            rate = rate.max((yl + l * slope).abs()).max((yr + r * slope).abs());
        }
    }
    rate
}

fn record<T>(slot: &RefCell<Option<Error>>, r: Result<T>, fallback: T) -> T {
    match r {
        Ok(v) => v,
        Err(e) => {
            slot.borrow_mut().get_or_insert(e);
            fallback
        }
    }
}

/// 2-D integral over a polygon of `(1/t₁) ∫ g(t₁, s) ds` where the inner
/// closed form is supplied by `inner(t₁, a, b)`.
fn integrate_polygon<F>(poly: &ConvexPolygon, omega: f64, spec: &QuadSpec, abs_tol: f64, inner: F) -> Result<f64>
where
    F: Fn(f64, f64, f64) -> f64,
{
    let breaks = refine(poly.breakpoints(), spec.panel_width(omega));
    let r = adaptive(
        |t: f64| match poly.slice_at(t) {
            Some((a, b)) if b > a => inner(t, a, b),
            _ => 0.0,
        },
        &breaks,
        abs_tol,
        spec.max_subdivisions,
    )?;
    Ok(r.value)
}

/// Slicing route for `k ∈ {2, 3}`.
pub fn sinprod_by_slicing(poly: &SupportPolytope, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    let Some(bx) = bounds_or_empty(poly)? else { return Ok(0.0) };
    match poly.k {
        2 => {
            let Some(pg) = polygon_of(poly, &bx, (0, 1)) else { return Ok(0.0) };
            let omega = chain_rate(&pg);
            integrate_polygon(&pg, omega, spec, spec.abs_tol, closure)
        }
        3 => slicing_3d(poly, &bx, spec),
        k => Err(Error::InvalidInput(format!("slicing supports k in {{2, 3}}, got {k}"))),
    }
}

fn slicing_3d(poly: &SupportPolytope, bx: &BoundingBox, spec: &QuadSpec) -> Result<f64> {
    let mut t1s: Vec<f64> = poly.vertices()?.iter().map(|v| v[0]).collect();
    t1s.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    t1s.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (a.abs() + b.abs() + 1.0));
    let r2 = bx.lo[1].abs().max(bx.hi[1].abs());
    let r3 = bx.lo[2].abs().max(bx.hi[2].abs());
    let span = bx.hi[0] - bx.lo[0];
    let inner_tol = spec.abs_tol / span.max(1.0);
    let failure = RefCell::new(None);
    let outer = |t1: f64| -> f64 {
        let Some(slice) = poly.fix_first(t1) else { return 0.0 };
        let sub = BoundingBox { lo: bx.lo[1..].to_vec(), hi: bx.hi[1..].to_vec() };
        let Some(pg) = polygon_of(&slice, &sub, (0, 1)) else { return 0.0 };
        let omega = t1.abs() * chain_rate(&pg);
        let r = integrate_polygon(&pg, omega, spec, inner_tol, |t2, a, b| closure(t1 * t2, a, b));
        record(&failure, r, 0.0)
    };
    let breaks = refine(t1s, spec.panel_width(2.0 * r2 * r3));
    let r = adaptive(outer, &breaks, spec.abs_tol, spec.max_subdivisions);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(r?.value)
}

/// `PV ∫_a^b cos(c s)/s ds` for `c ≥ 0`; `Ci(c|s|)` is a primitive on both
/// half-lines and the logarithmic parts cancel across zero.
fn cos_closure(c: f64, a: f64, b: f64) -> f64 {
    if c == 0.0 {
        return (b.abs().max(f64::MIN_POSITIVE) / a.abs().max(f64::MIN_POSITIVE)).ln();
    }
    let prim = |s: f64| cosine_integral((c * s.abs()).max(f64::MIN_POSITIVE));
    prim(b) - prim(a)
}

/// `∫_D sin(q t₁² + t₁ t₂)/(t₁ t₂) dt` over a 2-D polytope, the sine part of
/// the reduced kernel when a quadratic term survives.
pub fn quadratic_sin_part(poly: &SupportPolytope, quad_coef: f64, spec: &QuadSpec) -> Result<f64> {
    spec.validate()?;
    if poly.k != 2 {
        return Err(Error::InvalidInput("quadratic_sin_part needs k = 2".into()));
    }
    let Some(bx) = bounds_or_empty(poly)? else { return Ok(0.0) };
    let Some(pg) = polygon_of(poly, &bx, (0, 1)) else { return Ok(0.0) };
    let omega = chain_rate(&pg) + 2.0 * quad_coef.abs() * bx.radius();
    integrate_polygon(&pg, omega, spec, spec.abs_tol, |t, a, b| {
        let q = quad_coef * t * t;
        let s = q.sin();
        let cos_term = if s == 0.0 { 0.0 } else { s / t * cos_closure(t.abs(), a, b) };
        q.cos() * closure(t, a, b) + cos_term
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{support_polytope, Strip};
    use crate::osc1d::{brute_force_cube_integral, cube_integral};
    use crate::phase::sample_generic_alphas;
    use crate::quad::adaptive;

    fn spec() -> QuadSpec {
        QuadSpec { abs_tol: 1e-8, ..QuadSpec::default() }
    }

    #[test]
    fn closure_limits() {
        assert_eq!(closure(0.0, -2.0, 3.0), 5.0);
        assert!(closure(1e-13, -2.0, 3.0).is_finite());
        // Series and special-function branches meet.
        let (a, b) = (-1.5, 2.0);
        let p = 1e-2 / 2.0;
        let below = closure(p * (1.0 - 1e-9), a, b);
        let above = (sine_integral(p * b) - sine_integral(p * a)) / p;
        assert!((below - above).abs() < 1e-12);
    }

    #[test]
    fn cube_k2_matches_identity() {
        for n in [2.0, 4.0, 8.0, 30.0] {
            let cube = SupportPolytope::cube(2, n).unwrap();
            let v = sinprod_by_slicing(&cube, &spec()).unwrap();
            let w = cube_integral(2, n).unwrap();
            assert!((v - w).abs() < 2e-7, "N={n}: {v} vs {w}");
        }
        let brute = brute_force_cube_integral(2, 4.0, 400).unwrap();
        let v = sinprod_by_slicing(&SupportPolytope::cube(2, 4.0).unwrap(), &spec()).unwrap();
        assert!((v - brute).abs() / brute < 1e-3);
    }

    #[test]
    fn cube_k3_matches_identity() {
        let s = QuadSpec { abs_tol: 1e-6, ..QuadSpec::default() };
        for n in [2.0, 4.0] {
            let v = sinprod_by_slicing(&SupportPolytope::cube(3, n).unwrap(), &s).unwrap();
            let w = cube_integral(3, n).unwrap();
            assert!((v - w).abs() < 1e-4, "N={n}: {v} vs {w}");
        }
    }

    #[test]
    fn empty_polytope_is_zero() {
        let p = SupportPolytope::from_strips(
            2,
            vec![
                Strip::new(vec![1.0, 0.0], 1.0, 2.0).unwrap(),
                Strip::new(vec![1.0, 0.0], 3.0, 4.0).unwrap(),
                Strip::new(vec![0.0, 1.0], -1.0, 1.0).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(sinprod_by_slicing(&p, &spec()).unwrap(), 0.0);
    }

    #[test]
    fn generic_polygon_against_nested_quadrature() {
        let a = sample_generic_alphas(2, 5, 3, 0.05).unwrap();
        let p = support_polytope(0.4, &a, 6.0).unwrap();
        let v = sinprod_by_slicing(&p, &spec()).unwrap();
        let bx = p.circumscribed_box().unwrap();
        let w = adaptive(
            |t1: f64| match p.slice_interval(&[t1]) {
                Some((lo, hi)) => {
                    let mid = if lo < 0.0 && hi > 0.0 { vec![lo, 0.0, hi] } else { vec![lo, hi] };
                    adaptive(|s: f64| crate::osc1d::sinc(t1 * s), &mid, 1e-11, 5000).unwrap().value
                }
                None => 0.0,
            },
            &refine(vec![bx.lo[0], bx.hi[0]], 0.05),
            1e-9,
            20_000,
        )
        .unwrap()
        .value;
        assert!((v - w).abs() < 1e-6, "{v} vs {w}");
    }

    #[test]
    fn quadratic_part_reduces_to_product() {
        let a = sample_generic_alphas(2, 5, 3, 0.05).unwrap();
        let p = support_polytope(0.0, &a, 10.0).unwrap();
        let v0 = quadratic_sin_part(&p, 0.0, &spec()).unwrap();
        let v1 = sinprod_by_slicing(&p, &spec()).unwrap();
        assert!((v0 - v1).abs() < 1e-7);
    }

    #[test]
    fn quadratic_part_against_nested_quadrature() {
        let cube = SupportPolytope::cube(2, 3.0).unwrap();
        let q = 0.7;
        let v = quadratic_sin_part(&cube, q, &spec()).unwrap();
        // Inner PV in s by symmetric folding, outer plain adaptive.
        let w = adaptive(
            |t: f64| {
                let g = |s: f64| (q * t * t + t * s).sin() / (t * s);
                adaptive(|s: f64| g(s) + g(-s), &[0.0, 3.0], 1e-12, 5000).unwrap().value
            },
            &refine(vec![-3.0, 3.0], 0.1),
            1e-9,
            20_000,
        )
        .unwrap()
        .value;
        assert!((v - w).abs() < 1e-6, "{v} vs {w}");
    }
}
