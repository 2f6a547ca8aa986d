//! Strips, their intersections, and the queries the integrators need.
//!
//! With sharp cutoffs `χ_N`, the integrand of the counterexample at the
//! point `x` is supported on the intersection of `n` strips
//! `−N − x ≤ β⃗·t⃗ ≤ N − x`, one for `f` (`β⃗ = (1, …, 1)`) and one for each
//! `f_j` (`β⃗ = α⃗_{·j}`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::phase::AlphaMatrix;

/// `{ t : lower ≤ β·t ≤ upper }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    pub beta: Vec<f64>,
    pub lower: f64,
    pub upper: f64,
}

impl Strip {
    pub fn new(beta: Vec<f64>, lower: f64, upper: f64) -> Result<Self> {
        if !(lower < upper) {
            return Err(Error::InvalidInput(format!("strip bounds must satisfy a < b, got [{lower}, {upper}]")));
        }
        Ok(Self { beta, lower, upper })
    }

    pub fn value(&self, t: &[f64]) -> f64 {
        linalg::dot(&self.beta, t)
    }

    pub fn contains(&self, t: &[f64]) -> bool {
        let v = self.value(t);
        self.lower <= v && v <= self.upper
    }

    /// `|β|₁`.
    pub fn l1(&self) -> f64 {
        self.beta.iter().map(|b| b.abs()).sum()
    }

    fn tolerance(&self) -> f64 {
        1e-9 * (self.lower.abs() + self.upper.abs() + 1.0)
    }
}

/// Where a support polytope came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub x: f64,
    pub cutoff: f64,
    pub alphas: AlphaMatrix,
}

/// Intersection of strips in `ℝ^k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportPolytope {
    pub k: usize,
    pub strips: Vec<Strip>,
    pub provenance: Option<Provenance>,
}

/// Per-coordinate bounds `[lo_i, hi_i]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundingBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl BoundingBox {
    pub fn radius(&self) -> f64 {
        self.lo.iter().chain(&self.hi).map(|v| v.abs()).fold(0.0, f64::max)
    }
}

/// Strips of the counterexample at evaluation point `x` and cutoff `N`.
pub fn support_polytope(x: f64, alphas: &AlphaMatrix, cutoff: f64) -> Result<SupportPolytope> {
    if !(cutoff > 0.0) {
        return Err(Error::InvalidInput(format!("cutoff must be positive, got {cutoff}")));
    }
    let k = alphas.k();
    let (lo, hi) = (-cutoff - x, cutoff - x);
    let mut strips = vec![Strip::new(vec![1.0; k], lo, hi)?];
    for j in 0..alphas.n() - 1 {
        strips.push(Strip::new(alphas.column(j), lo, hi)?);
    }
    Ok(SupportPolytope {
        k,
        strips,
        provenance: Some(Provenance { x, cutoff, alphas: alphas.clone() }),
    })
}

impl SupportPolytope {
    pub fn from_strips(k: usize, strips: Vec<Strip>) -> Result<Self> {
        if strips.iter().any(|s| s.beta.len() != k) {
            return Err(Error::DimensionMismatch(format!("every strip normal needs {k} entries")));
        }
        Ok(Self { k, strips, provenance: None })
    }

    /// The cube `[−half, half]^k` written as `k` coordinate strips.
    pub fn cube(k: usize, half: f64) -> Result<Self> {
        let strips = (0..k)
            .map(|i| {
                let mut beta = vec![0.0; k];
                beta[i] = 1.0;
                Strip::new(beta, -half, half)
            })
            .collect::<Result<_>>()?;
        Self::from_strips(k, strips)
    }

    /// Adds the coordinate strips of `[lo, hi]` boxes.
    pub fn intersect_box(&self, lo: &[f64], hi: &[f64]) -> Result<Self> {
        let mut strips = self.strips.clone();
        for i in 0..self.k {
            let mut beta = vec![0.0; self.k];
            beta[i] = 1.0;
            strips.push(Strip::new(beta, lo[i], hi[i])?);
        }
        Ok(Self { k: self.k, strips, provenance: self.provenance.clone() })
    }

    /// Scales every strip bound by `lambda > 0`.
    pub fn scaled(&self, lambda: f64) -> Self {
        let strips = self
            .strips
            .iter()
            .map(|s| Strip { beta: s.beta.clone(), lower: s.lower * lambda, upper: s.upper * lambda })
            .collect();
        Self { k: self.k, strips, provenance: None }
    }

    pub fn contains(&self, t: &[f64]) -> bool {
        self.strips.iter().all(|s| s.contains(t))
    }

    /// Image under `t_axis → −t_axis`.
    pub fn reflected(&self, axis: usize) -> Self {
        let strips = self
            .strips
            .iter()
            .map(|s| {
                let mut beta = s.beta.clone();
                beta[axis] = -beta[axis];
                Strip { beta, lower: s.lower, upper: s.upper }
            })
            .collect();
        Self { k: self.k, strips, provenance: self.provenance.clone() }
    }

    /// Interval of the last coordinate once `t₁ … t_{k−1}` are fixed.
    pub fn slice_interval(&self, prefix: &[f64]) -> Option<(f64, f64)> {
        assert_eq!(prefix.len() + 1, self.k, "prefix must fix all but one coordinate");
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for s in &self.strips {
            let c = s.beta[self.k - 1];
            let r = linalg::dot(&s.beta[..self.k - 1], prefix);
            if c == 0.0 {
                if r < s.lower || r > s.upper {
                    return None;
                }
                continue;
            }
            let (p, q) = ((s.lower - r) / c, (s.upper - r) / c);
            lo = lo.max(p.min(q));
            hi = hi.min(p.max(q));
        }
        (lo <= hi).then_some((lo, hi))
    }

    /// Fixes the first coordinate; `None` when the slice is empty.
    pub fn fix_first(&self, t1: f64) -> Option<SupportPolytope> {
        let mut strips = Vec::with_capacity(self.strips.len());
        for s in &self.strips {
            let shift = s.beta[0] * t1;
            let beta = s.beta[1..].to_vec();
            let (lo, hi) = (s.lower - shift, s.upper - shift);
            if beta.iter().all(|&b| b == 0.0) {
                if lo > 0.0 || hi < 0.0 {
                    return None;
                }
                continue;
            }
            strips.push(Strip { beta, lower: lo, upper: hi });
        }
        Some(SupportPolytope { k: self.k - 1, strips, provenance: None })
    }

    pub fn origin_interior(&self) -> Result<()> {
        match self.strips.iter().position(|s| !(s.lower < 0.0 && 0.0 < s.upper)) {
            Some(i) => Err(Error::OriginNotInterior { strip: i }),
            None => Ok(()),
        }
    }

    /// Half side of the largest centred cube inside every strip:
    /// `min over strips of min(−a, b) / |β|₁`.
    pub fn inscribed_cube_side(&self) -> Result<f64> {
        self.origin_interior()?;
        Ok(self
            .strips
            .iter()
            .map(|s| (-s.lower).min(s.upper) / s.l1())
            .fold(f64::INFINITY, f64::min))
    }

    fn normals_span(&self) -> bool {
        let rows: Vec<Vec<f64>> = self.strips.iter().map(|s| s.beta.clone()).collect();
        linalg::rank(&rows, self.k) == self.k
    }

    /// Vertices by exhaustive enumeration of `k`-tuples of strip faces.
    pub fn vertices(&self) -> Result<Vec<Vec<f64>>> {
        if !self.normals_span() {
            return Err(Error::Unbounded);
        }
        let k = self.k;
        let s = self.strips.len();
        let mut out = Vec::new();
        let mut combo: Vec<usize> = (0..k).collect();
        loop {
            for faces in 0..(1usize << k) {
                let a: Vec<Vec<f64>> = combo.iter().map(|&i| self.strips[i].beta.clone()).collect();
                let b: Vec<f64> = combo
                    .iter()
                    .enumerate()
                    .map(|(bit, &i)| {
                        let st = &self.strips[i];
                        if faces >> bit & 1 == 1 { st.upper } else { st.lower }
                    })
                    .collect();
                if let Some(t) = linalg::solve_square(&a, &b) {
                    let feasible = self.strips.iter().all(|st| {
                        let v = st.value(&t);
                        let tol = st.tolerance();
                        v >= st.lower - tol && v <= st.upper + tol
                    });
                    if feasible && t.iter().all(|v| v.is_finite()) {
                        out.push(t);
                    }
                }
            }
            // next combination
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if combo[i] < s - k + i {
                    combo[i] += 1;
                    for j in i + 1..k {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Exact per-coordinate bounds from the vertex set.
    pub fn circumscribed_box(&self) -> Result<BoundingBox> {
        let verts = self.vertices()?;
        if verts.is_empty() {
            return Err(Error::InvalidInput("polytope is empty".into()));
        }
        let mut lo = vec![f64::INFINITY; self.k];
        let mut hi = vec![f64::NEG_INFINITY; self.k];
        for v in &verts {
            for i in 0..self.k {
                lo[i] = lo[i].min(v[i]);
                hi[i] = hi[i].max(v[i]);
            }
        }
        Ok(BoundingBox { lo, hi })
    }
}

/// Convex polygon with counter-clockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    pub vertices: Vec<[f64; 2]>,
}

impl ConvexPolygon {
    pub fn rectangle(lo: [f64; 2], hi: [f64; 2]) -> Self {
        Self { vertices: vec![[lo[0], lo[1]], [hi[0], lo[1]], [hi[0], hi[1]], [lo[0], hi[1]]] }
    }

    /// Keeps `{ p : n·p ≤ c }`.
    fn clip(&self, n: [f64; 2], c: f64) -> Self {
        let m = self.vertices.len();
        let mut out = Vec::with_capacity(m + 1);
        for i in 0..m {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % m];
            let fp = n[0] * p[0] + n[1] * p[1] - c;
            let fq = n[0] * q[0] + n[1] * q[1] - c;
            if fp <= 0.0 {
                out.push(p);
            }
            if (fp < 0.0 && fq > 0.0) || (fp > 0.0 && fq < 0.0) {
                let s = fp / (fp - fq);
                out.push([p[0] + s * (q[0] - p[0]), p[1] + s * (q[1] - p[1])]);
            }
        }
        Self { vertices: out }
    }

    /// The 2-D polytope clipped out of the starting rectangle.
    pub fn from_polytope(poly: &SupportPolytope, lo: [f64; 2], hi: [f64; 2]) -> Option<Self> {
        assert_eq!(poly.k, 2);
        let mut p = Self::rectangle(lo, hi);
        for s in &poly.strips {
            let n = [s.beta[0], s.beta[1]];
            p = p.clip(n, s.upper);
            if p.vertices.len() < 3 {
                return None;
            }
            p = p.clip([-n[0], -n[1]], -s.lower);
            if p.vertices.len() < 3 {
                return None;
            }
        }
        Some(p)
    }

    pub fn x_range(&self) -> (f64, f64) {
        self.vertices
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v[0]), b.max(v[0])))
    }

    /// Sorted, de-duplicated vertex abscissae.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self.vertices.iter().map(|v| v[0]).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        xs.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * (a.abs() + b.abs() + 1e-300));
        xs
    }

    /// `[y_min, y_max]` of the vertical line at `x`.
    pub fn slice_at(&self, x: f64) -> Option<(f64, f64)> {
        let m = self.vertices.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..m {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % m];
            let (x0, x1) = (p[0].min(q[0]), p[0].max(q[0]));
            if x < x0 || x > x1 {
                continue;
            }
            if x1 - x0 <= 0.0 {
                lo = lo.min(p[1].min(q[1]));
                hi = hi.max(p[1].max(q[1]));
            } else {
                let s = (x - p[0]) / (q[0] - p[0]);
                let y = p[1] + s * (q[1] - p[1]);
                lo = lo.min(y);
                hi = hi.max(y);
            }
        }
        (lo <= hi).then_some((lo, hi))
    }

    pub fn area(&self) -> f64 {
        let m = self.vertices.len();
        0.5 * (0..m)
            .map(|i| {
                let p = self.vertices[i];
                let q = self.vertices[(i + 1) % m];
                p[0] * q[1] - q[0] * p[1]
            })
            .sum::<f64>()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::sample_generic_alphas;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn generic(k: usize, n: usize) -> AlphaMatrix {
        sample_generic_alphas(k, n, 1, 0.05).unwrap()
    }

    #[test]
    fn symmetric_at_origin() {
        let p = support_polytope(0.0, &generic(2, 4), 10.0).unwrap();
        assert_eq!(p.strips.len(), 4);
        assert!(p.strips.iter().all(|s| s.lower == -10.0 && s.upper == 10.0));
        assert!(p.origin_interior().is_ok());
    }

    #[test]
    fn slice_of_single_strip() {
        let p = SupportPolytope::from_strips(2, vec![Strip::new(vec![1.0, 1.0], -10.0, 10.0).unwrap()]).unwrap();
        assert_eq!(p.slice_interval(&[3.0]), Some((-13.0, 7.0)));
    }

    #[test]
    fn slice_outside_and_through_origin() {
        let p = support_polytope(0.0, &generic(2, 5), 10.0).unwrap();
        let bx = p.circumscribed_box().unwrap();
        assert_eq!(p.slice_interval(&[bx.hi[0] + 1.0]), None);
        let (a, b) = p.slice_interval(&[0.0]).unwrap();
        assert!(a < 0.0 && 0.0 < b);
    }

    #[test]
    fn inscribed_single_strip() {
        let p = SupportPolytope::from_strips(2, vec![Strip::new(vec![1.0, 1.0], -10.0, 10.0).unwrap()]).unwrap();
        assert_eq!(p.inscribed_cube_side().unwrap(), 5.0);
    }

    #[test]
    fn inscribed_requires_interior_origin() {
        let p = SupportPolytope::from_strips(1, vec![Strip::new(vec![1.0], 1.0, 2.0).unwrap()]).unwrap();
        assert!(matches!(p.inscribed_cube_side(), Err(Error::OriginNotInterior { strip: 0 })));
    }

    #[test]
    fn inscribed_cube_corner_sampling() {
        let p = support_polytope(0.0, &generic(2, 4), 10.0).unwrap();
        let c = p.inscribed_cube_side().unwrap();
        assert!(c > 0.0 && c <= 10.0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..2000 {
            let t = [rng.gen_range(-c..c), rng.gen_range(-c..c)];
            assert!(p.contains(&t));
        }
        let big = c * (1.0 + 1e-6);
        let corners = [[big, big], [big, -big], [-big, big], [-big, -big]];
        assert!(corners.iter().any(|t| !p.contains(t)));
    }

    #[test]
    fn scaling_in_cutoff() {
        let a = generic(2, 5);
        let p1 = support_polytope(0.0, &a, 10.0).unwrap();
        let p2 = support_polytope(0.0, &a, 20.0).unwrap();
        let (c1, c2) = (p1.inscribed_cube_side().unwrap(), p2.inscribed_cube_side().unwrap());
        assert!((c2 - 2.0 * c1).abs() < 1e-12);
        let (b1, b2) = (p1.circumscribed_box().unwrap(), p2.circumscribed_box().unwrap());
        for i in 0..2 {
            assert!((b2.hi[i] - 2.0 * b1.hi[i]).abs() < 1e-9);
            assert!((b2.lo[i] - 2.0 * b1.lo[i]).abs() < 1e-9);
        }
    }

    #[test]
    fn box_k1() {
        let n = 7.0;
        let p = SupportPolytope::from_strips(
            1,
            vec![Strip::new(vec![1.0], -n, n).unwrap(), Strip::new(vec![2.0], -n, n).unwrap()],
        )
        .unwrap();
        let b = p.circumscribed_box().unwrap();
        assert_eq!((b.lo[0], b.hi[0]), (-n / 2.0, n / 2.0));
    }

    #[test]
    fn parallel_strips_unbounded() {
        let s = Strip::new(vec![1.0, 1.0], -1.0, 1.0).unwrap();
        let p = SupportPolytope::from_strips(2, vec![s.clone(), s]).unwrap();
        assert!(matches!(p.circumscribed_box(), Err(Error::Unbounded)));
    }

    #[test]
    fn polygon_matches_box_and_slices() {
        let p = support_polytope(0.7, &generic(2, 5), 10.0).unwrap();
        let b = p.circumscribed_box().unwrap();
        let poly = ConvexPolygon::from_polytope(&p, [b.lo[0] - 1.0, b.lo[1] - 1.0], [b.hi[0] + 1.0, b.hi[1] + 1.0]).unwrap();
        let (x0, x1) = poly.x_range();
        assert!((x0 - b.lo[0]).abs() < 1e-9 && (x1 - b.hi[0]).abs() < 1e-9);
        for &x in &[x0 + 0.1, 0.0, 1.3, x1 - 0.1] {
            let (a1, b1) = poly.slice_at(x).unwrap();
            let (a2, b2) = p.slice_interval(&[x]).unwrap();
            assert!((a1 - a2).abs() < 1e-9 && (b1 - b2).abs() < 1e-9);
        }
        assert!(poly.area() > 0.0);
    }

    #[test]
    fn three_dimensional_box_and_fix_first() {
        let p = support_polytope(0.0, &generic(3, 19), 5.0).unwrap();
        let b = p.circumscribed_box().unwrap();
        assert!(b.radius() > 0.0 && b.radius().is_finite());
        let slice = p.fix_first(0.3 * b.hi[0]).unwrap();
        assert_eq!(slice.k, 2);
        assert!(p.fix_first(b.hi[0] * 1.01).is_none_or(|s| s.vertices().unwrap().is_empty()));
    }
}
