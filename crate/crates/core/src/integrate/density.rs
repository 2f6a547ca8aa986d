//! Level-set route: `∫_D sin(∏t)/∏t dt = ∫₀^∞ sinc(v) ρ(v) dv` with
//! `ρ(v) = ∫_{D ∩ {|∏t| = v}} dσ/|∇∏t|`, written as
//!
//! ```text
//! ρ_D(v) = ∫ ρ_{D_{t₁}}(v/|t₁|) dt₁/|t₁|,    ρ_{[a,b]}(w) = 1[a<w<b] + 1[a<−w<b].
//! ```
//!
//! For a polygon the last step is exact: the chains of the polygon are
//! linear on each piece, so `{t : a(t) < w/|t| < b(t)}` is cut out by two
//! quadratics and `∫ dt/|t|` over it is a sum of logarithms.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::{BoundingBox, ConvexPolygon, SupportPolytope};
use crate::osc1d::sinc;
use crate::quad::CompositeGauss;

use super::slicing::{bounds_or_empty, polygon_of};
use super::QuadSpec;

const V_MIN: f64 = 1e-8;
const V_FAR: f64 = 1e6;

/// At most two disjoint intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Intervals {
    len: usize,
    items: [(f64, f64); 2],
}

impl Intervals {
    fn as_slice(&self) -> &[(f64, f64)] {
        &self.items[..self.len]
    }
}

/// `{t ∈ [l, r] : c0 + c1 t + c2 t² > 0}` as disjoint intervals.
fn positive_set(c0: f64, c1: f64, c2: f64, l: f64, r: f64) -> Intervals {
    let scale = l.abs().max(r.abs());
    let mut cuts = [l, r, r, r];
    let mut m = 1;
    let mut push = |x: f64| {
        if x > l && x < r {
            cuts[m] = x;
            m += 1;
        }
    };
    if c2.abs() * scale * scale <= 1e-14 * (c1.abs() * scale + c0.abs()) {
        if c1 != 0.0 {
            push(-c0 / c1);
        }
    } else {
        let disc = c1 * c1 - 4.0 * c2 * c0;
        if disc >= 0.0 {
            let q = -0.5 * (c1 + c1.signum() * disc.sqrt());
            if q != 0.0 {
                let (x, y) = (q / c2, c0 / q);
                push(x.min(y));
                push(x.max(y));
            } else {
                push(0.0);
            }
        }
    }
    cuts[m] = r;
    let mut out = Intervals { len: 0, items: [(0.0, 0.0); 2] };
    for i in 0..m {
        let (a, b) = (cuts[i], cuts[i + 1]);
        let mid = 0.5 * (a + b);
        if b > a && c0 + mid * (c1 + mid * c2) > 0.0 {
            if out.len > 0 && out.items[out.len - 1].1 == a {
                out.items[out.len - 1].1 = b;
            } else if out.len < 2 {
                out.items[out.len] = (a, b);
                out.len += 1;
            }
        }
    }
    out
}

/// Chains of a polygon on one piece of constant sign: `a(t) = a0 + a1 t`,
/// `b(t) = b0 + b1 t` for `t ∈ [l, r]`.
#[derive(Debug, Clone, Copy)]
struct Piece {
    l: f64,
    r: f64,
    sigma: f64,
    a0: f64,
    a1: f64,
    b0: f64,
    b1: f64,
}

/// Exact `ρ` of a convex polygon.
#[derive(Debug, Clone)]
pub(crate) struct PolygonDensity {
    pieces: Vec<Piece>,
}

impl PolygonDensity {
    pub(crate) fn new(pg: &ConvexPolygon) -> Self {
        let mut xs = pg.breakpoints();
        let (lo, hi) = (xs[0], xs[xs.len() - 1]);
        if lo < 0.0 && hi > 0.0 {
            xs.push(0.0);
            xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        }
        let mut pieces = Vec::with_capacity(xs.len());
        for w in xs.windows(2) {
            let (l, r) = (w[0], w[1]);
            if r <= l {
                continue;
            }
            let (Some((al, bl)), Some((ar, br))) = (pg.slice_at(l), pg.slice_at(r)) else { continue };
            let a1 = (ar - al) / (r - l);
            let b1 = (br - bl) / (r - l);
            let sigma = if l >= 0.0 { 1.0 } else { -1.0 };
            pieces.push(Piece { l, r, sigma, a0: al - a1 * l, a1, b0: bl - b1 * l, b1 });
        }
        Self { pieces }
    }

    /// `ρ(w)` for `w > 0`.
    pub(crate) fn eval(&self, w: f64) -> f64 {
        let mut total = 0.0;
        for p in &self.pieces {
            // A(t) = |t| a(t), B(t) = |t| b(t)
            let (a1, a2) = (p.sigma * p.a0, p.sigma * p.a1);
            let (b1, b2) = (p.sigma * p.b0, p.sigma * p.b1);
            for target in [w, -w] {
                let above = positive_set(-target, b1, b2, p.l, p.r);
                if above.len == 0 {
                    continue;
                }
                let below = positive_set(target, -a1, -a2, p.l, p.r);
                for &(p0, q0) in above.as_slice() {
                    for &(p1, q1) in below.as_slice() {
                        let (x, y) = (p0.max(p1).abs(), q0.min(q1).abs());
                        if p0.max(p1) < q0.min(q1) && x > 0.0 && y > 0.0 {
                            total += (y / x).ln().abs();
                        }
                    }
                }
            }
        }
        total
    }
}

/// One node of the outer rule in `t₁`: `|t₁|`, weight already divided by
/// `|t₁|`, and the exact density of the slice polygon.
#[derive(Debug, Clone)]
pub(crate) struct SliceNode {
    u: f64,
    weight: f64,
    slice: PolygonDensity,
}

/// Evaluator of `ρ` for one polytope.
pub(crate) enum Density {
    Interval(f64, f64),
    Polygon(PolygonDensity),
    Solid(Vec<SliceNode>),
    Empty,
}

/// Width of the outer log panels in `ln |t₁|`.
const LOG_PANEL: f64 = 0.35;

/// Outer panels in `|t₁|` on one side of zero: logarithmic below `tau`,
/// uniform above, never crossing a vertex abscissa.
fn side_rule(cuts: &[f64], tau_lo: f64, tau: f64, width: f64) -> Vec<(f64, f64)> {
    let gl = crate::quad::gauss_legendre(10);
    let mut out = Vec::new();
    let mut pts: Vec<f64> = cuts.iter().copied().filter(|&c| c > tau_lo).collect();
    let top = pts.iter().copied().fold(0.0, f64::max);
    if top <= tau_lo {
        return out;
    }
    pts.push(tau_lo);
    if tau < top {
        pts.push(tau);
    }
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    pts.dedup();
    for w in pts.windows(2) {
        let (p, q) = (w[0], w[1]);
        if q <= tau {
            let (lp, lq) = (p.ln(), q.ln());
            let m = ((lq - lp) / LOG_PANEL).ceil().max(1.0) as usize;
            let h = (lq - lp) / m as f64;
            for i in 0..m {
                let c = lp + (i as f64 + 0.5) * h;
                for (x, wt) in gl.0.iter().zip(&gl.1) {
                    let u = (c + 0.5 * h * x).exp();
                    // dt = u d(ln u), and the density carries 1/u
                    out.push((u, wt * 0.5 * h));
                }
            }
        } else {
            let m = ((q - p) / width).ceil().max(1.0) as usize;
            let h = (q - p) / m as f64;
            for i in 0..m {
                let c = p + (i as f64 + 0.5) * h;
                for (x, wt) in gl.0.iter().zip(&gl.1) {
                    let u = c + 0.5 * h * x;
                    out.push((u, wt * 0.5 * h / u));
                }
            }
        }
    }
    out
}

impl Density {
    /// Evaluator valid for `v ≥ v_min`.
    pub(crate) fn new(poly: &SupportPolytope, v_min: f64) -> Result<Self> {
        let Some(bx) = bounds_or_empty(poly)? else { return Ok(Density::Empty) };
        Ok(match poly.k {
            1 => Density::Interval(bx.lo[0], bx.hi[0]),
            2 => match polygon_of(poly, &bx, (0, 1)) {
                Some(pg) => Density::Polygon(PolygonDensity::new(&pg)),
                None => Density::Empty,
            },
            3 => {
                let verts: Vec<f64> = poly.vertices()?.iter().map(|v| v[0]).collect();
                let r1 = bx.lo[0].abs().max(bx.hi[0].abs());
                let w = (bx.lo[1].abs().max(bx.hi[1].abs())) * (bx.lo[2].abs().max(bx.hi[2].abs()));
                // Below |t₁| = v_min / w every slice product is smaller than v.
                let tau_lo = 0.5 * v_min / w.max(f64::MIN_POSITIVE);
                // Log panels hand over to uniform ones where their widths match.
                let width = r1 / 48.0;
                let tau = width / (LOG_PANEL.exp() - 1.0);
                let sub = BoundingBox { lo: bx.lo[1..].to_vec(), hi: bx.hi[1..].to_vec() };
                let mut nodes = Vec::new();
                for sign in [-1.0, 1.0] {
                    let cuts: Vec<f64> = verts.iter().map(|t| sign * t).filter(|&t| t > 0.0).collect();
                    for (u, weight) in side_rule(&cuts, tau_lo, tau, width) {
                        let Some(slice) = poly.fix_first(sign * u) else { continue };
                        if let Some(pg) = polygon_of(&slice, &sub, (0, 1)) {
                            nodes.push(SliceNode { u, weight, slice: PolygonDensity::new(&pg) });
                        }
                    }
                }
                Density::Solid(nodes)
            }
            k => return Err(Error::InvalidInput(format!("product density supports k <= 3, got {k}"))),
        })
    }

    pub(crate) fn eval(&self, v: f64) -> f64 {
        match self {
            Density::Empty => 0.0,
            Density::Interval(a, b) => {
                let inside = |w: f64| (*a < w && w < *b) as u8 as f64;
                inside(v) + inside(-v)
            }
            Density::Polygon(pd) => pd.eval(v),
            Density::Solid(nodes) => nodes.iter().map(|n| n.weight * n.slice.eval(v / n.u)).sum(),
        }
    }
}

/// `ρ_D(v)` for `k ≤ 3`, `v > 0`.
pub fn product_density(poly: &SupportPolytope, v: f64) -> Result<f64> {
    Ok(Density::new(poly, v)?.eval(v))
}

/// Samples of `ρ` on a logarithmic grid from `1e−8` to the largest product.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityTable {
    pub ln_v: Vec<f64>,
    pub values: Vec<f64>,
    pub v_max: f64,
}

impl DensityTable {
    pub fn build(poly: &SupportPolytope, spec: &QuadSpec) -> Result<Self> {
        spec.validate()?;
        let density = Density::new(poly, V_MIN)?;
        let v_max = match &density {
            Density::Empty => 0.0,
            _ => max_product(poly)?,
        };
        if v_max <= V_MIN {
            return Ok(Self { ln_v: vec![], values: vec![], v_max });
        }
        let (l0, l1) = (V_MIN.ln(), v_max.ln());
        let step = std::f64::consts::LN_10 / spec.density_points_per_decade as f64;
        let m = ((l1 - l0) / step).ceil().max(3.0) as usize;
        let h = (l1 - l0) / m as f64;
        let ln_v: Vec<f64> = (0..=m).map(|i| if i == m { l1 } else { l0 + i as f64 * h }).collect();
        let values: Vec<f64> = ln_v.par_iter().map(|&l| density.eval(l.exp())).collect();
        Ok(Self { ln_v, values, v_max })
    }

    /// Cubic Lagrange interpolation in `ln v`; zero beyond the largest product.
    pub fn interpolate(&self, v: f64) -> f64 {
        let n = self.ln_v.len();
        if n == 0 || v >= self.v_max {
            return 0.0;
        }
        let x = v.ln();
        let h = self.ln_v[1] - self.ln_v[0];
        let i = (((x - self.ln_v[0]) / h).floor() as isize).clamp(0, n as isize - 2) as usize;
        let s = i.saturating_sub(1).min(n.saturating_sub(4));
        let mut acc = 0.0;
        for j in s..s + 4 {
            let mut w = 1.0;
            for m in s..s + 4 {
                if m != j {
                    w *= (x - self.ln_v[m]) / (self.ln_v[j] - self.ln_v[m]);
                }
            }
            acc += w * self.values[j];
        }
        acc
    }

    /// `∫₀^{v_max} sinc(v) ρ(v) dv`.
    pub fn integrate_against_sinc(&self) -> f64 {
        if self.values.is_empty() {
            return 0.0;
        }
        let v0 = V_MIN;
        // Below the grid ρ is close to affine in ln(1/v).
        let slope = (self.values[0] - self.values[1]) / (self.ln_v[1] - self.ln_v[0]);
        let mut total = v0 * (self.values[0] + slope);
        let gl = CompositeGauss::new(20);
        let l1 = self.v_max.min(1.0).ln();
        total += gl.integrate(|y: f64| {
            let v = y.exp();
            sinc(v) * self.interpolate(v) * v
        }, v0.ln(), l1, 0.5);
        if self.v_max > 1.0 {
            let far = self.v_max.min(V_FAR);
            let gl10 = CompositeGauss::new(10);
            total += gl10.integrate(|v: f64| sinc(v) * self.interpolate(v), 1.0, far, std::f64::consts::PI);
            if self.v_max > V_FAR {
                total += V_FAR.cos() * self.interpolate(V_FAR) / V_FAR;
            }
        }
        total
    }
}

/// Largest `|t₁⋯t_k|` over the polytope (exact for `k ≤ 2`, a box bound for
/// `k = 3`).
fn max_product(poly: &SupportPolytope) -> Result<f64> {
    let verts = poly.vertices()?;
    Ok(match poly.k {
        1 => verts.iter().map(|v| v[0].abs()).fold(0.0, f64::max),
        2 => {
            let bx = poly.circumscribed_box()?;
            let Some(pg) = polygon_of(poly, &bx, (0, 1)) else { return Ok(0.0) };
            let m = pg.vertices.len();
            let mut best: f64 = 0.0;
            for i in 0..m {
                let p = pg.vertices[i];
                let q = pg.vertices[(i + 1) % m];
                best = best.max((p[0] * p[1]).abs());
                // t(s) = p + s (q − p); product is quadratic in s
                let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
                let c2 = dx * dy;
                let c1 = p[0] * dy + p[1] * dx;
                if c2 != 0.0 {
                    let s = -c1 / (2.0 * c2);
                    if (0.0..=1.0).contains(&s) {
                        best = best.max(((p[0] + s * dx) * (p[1] + s * dy)).abs());
                    }
                }
            }
            best
        }
        _ => {
            let bx = poly.circumscribed_box()?;
            (0..poly.k).map(|i| bx.lo[i].abs().max(bx.hi[i].abs())).product()
        }
    })
}

/// Level-set route for `k ∈ {2, 3}`.
pub fn sinprod_by_level_sets(poly: &SupportPolytope, spec: &QuadSpec) -> Result<f64> {
    Ok(DensityTable::build(poly, spec)?.integrate_against_sinc())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::support_polytope;
    use crate::integrate::sinprod_by_slicing;
    use crate::osc1d::cube_integral;
    use crate::phase::sample_generic_alphas;

    #[test]
    fn positive_sets() {
        assert_eq!(positive_set(-1.0, 0.0, 1.0, -3.0, 3.0).as_slice(), &[(-3.0, -1.0), (1.0, 3.0)]);
        assert_eq!(positive_set(1.0, 0.0, -1.0, -3.0, 3.0).as_slice(), &[(-1.0, 1.0)]);
        assert_eq!(positive_set(-1.0, 2.0, 0.0, 0.0, 3.0).as_slice(), &[(0.5, 3.0)]);
        assert_eq!(positive_set(-1.0, 0.0, 0.0, 0.0, 3.0).len, 0);
    }

    #[test]
    fn square_density_is_logarithmic() {
        let n = 5.0;
        let cube = SupportPolytope::cube(2, n).unwrap();
        for v in [1e-6, 0.3, 2.0, 24.0] {
            let r = product_density(&cube, v).unwrap();
            assert!((r - 4.0 * (n * n / v).ln()).abs() < 1e-10, "v={v}: {r}");
        }
        assert_eq!(product_density(&cube, 26.0).unwrap(), 0.0);
    }

    #[test]
    fn cube_density_k3() {
        let n = 3.0;
        let cube = SupportPolytope::cube(3, n).unwrap();
        for v in [1e-3, 0.5, 7.0] {
            let r = product_density(&cube, v).unwrap();
            let l = (n * n * n / v).ln();
            // Fixed t₁ rule: the kink at |t₁| = v/N² is not a panel break.
            assert!((r - 4.0 * l * l).abs() < 2e-5 * l * l, "v={v}: {r} vs {}", 4.0 * l * l);
        }
    }

    #[test]
    fn cubes_match_identity() {
        let spec = QuadSpec::default();
        for (k, n) in [(2u32, 10.0), (2, 300.0), (3, 4.0), (3, 60.0)] {
            let cube = SupportPolytope::cube(k as usize, n).unwrap();
            let v = sinprod_by_level_sets(&cube, &spec).unwrap();
            let w = cube_integral(k, n).unwrap();
            assert!((v - w).abs() < 1e-5 * w.abs(), "k={k} N={n}: {v} vs {w}");
        }
    }

    #[test]
    fn agrees_with_slicing_on_generic_polygon() {
        let a = sample_generic_alphas(2, 5, 11, 0.05).unwrap();
        let spec = QuadSpec { abs_tol: 1e-8, ..QuadSpec::default() };
        for (x, n) in [(0.0, 20.0), (1.5, 60.0)] {
            let p = support_polytope(x, &a, n).unwrap();
            let u = sinprod_by_level_sets(&p, &spec).unwrap();
            let s = sinprod_by_slicing(&p, &spec).unwrap();
            assert!((u - s).abs() < 1e-3 * s.abs(), "N={n}: {u} vs {s}");
        }
    }

    #[test]
    fn agrees_with_slicing_k3() {
        let a = sample_generic_alphas(3, 19, 2, 0.05).unwrap();
        let p = support_polytope(0.0, &a, 8.0).unwrap();
        let spec = QuadSpec { abs_tol: 1e-6, ..QuadSpec::default() };
        let u = sinprod_by_level_sets(&p, &spec).unwrap();
        let s = sinprod_by_slicing(&p, &spec).unwrap();
        assert!((u - s).abs() < 2e-3 * s.abs(), "{u} vs {s}");
    }
}
