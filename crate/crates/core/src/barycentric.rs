//! Barycentric coordinates relative to a reference triangle: normalization,
//! distance and area formulas, change of reference triangle, and conversion
//! to and from Cartesian coordinates.

use crate::geomcore::{triangle_area, Point};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coordinate sums below this fraction of the L1 norm mean a point at infinity.
pub const INFINITY_EPS: f64 = 1e-9;
/// Squared distances down to this negative value are clamped to zero.
pub const RADICAND_CLAMP: f64 = -1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BaryError {
    #[error("point lies on the line at infinity")]
    AtInfinity,
    #[error("coordinates are all zero or non-finite")]
    Degenerate,
    #[error("reference triangle is degenerate")]
    DegenerateTriangle,
    #[error("negative squared distance {0}: inputs are not normalized")]
    NegativeRadicand(f64),
}

/// Reference triangle with side lengths `a = |BC|`, `b = |CA|`, `c = |AB|`
/// and signed area `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefTriangle {
    pub va: Point,
    pub vb: Point,
    pub vc: Point,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub k: f64,
}

impl RefTriangle {
    pub fn new(va: Point, vb: Point, vc: Point) -> Self {
        Self {
            va,
            vb,
            vc,
            a: vb.dist(vc),
            b: vc.dist(va),
            c: va.dist(vb),
            k: triangle_area(va, vb, vc),
        }
    }
}

/// Homogeneous barycentric coordinates `(u : v : w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bary {
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl Bary {
    pub const fn new(u: f64, v: f64, w: f64) -> Self {
        Self { u, v, w }
    }

    pub fn sum(&self) -> f64 {
        self.u + self.v + self.w
    }

    pub fn l1(&self) -> f64 {
        self.u.abs() + self.v.abs() + self.w.abs()
    }

    pub fn is_normalized(&self) -> bool {
        (self.sum() - 1.0).abs() < 1e-12
    }
}

/// Divides by the coordinate sum.
pub fn normalize(p: Bary) -> Result<Bary, BaryError> {
    let l1 = p.l1();
    if !(l1 > 0.0) || !l1.is_finite() {
        return Err(BaryError::Degenerate);
    }
    let s = p.sum();
    if s.abs() < INFINITY_EPS * l1 {
        return Err(BaryError::AtInfinity);
    }
    Ok(Bary::new(p.u / s, p.v / s, p.w / s))
}

/// Distance between two normalized points via
/// `sqrt(-a^2 yz - b^2 zx - c^2 xy)` on the displacement `(x, y, z)`.
pub fn bary_distance(t: &RefTriangle, p: Bary, q: Bary) -> Result<f64, BaryError> {
    let (x, y, z) = (q.u - p.u, q.v - p.v, q.w - p.w);
    let r = -t.a * t.a * y * z - t.b * t.b * z * x - t.c * t.c * x * y;
    if r < 0.0 {
        if r < RADICAND_CLAMP * (t.a * t.a + t.b * t.b + t.c * t.c) {
            return Err(BaryError::NegativeRadicand(r));
        }
        return Ok(0.0);
    }
    Ok(r.sqrt())
}

fn det3(p: Bary, q: Bary, r: Bary) -> f64 {
    p.u * (q.v * r.w - q.w * r.v) - p.v * (q.u * r.w - q.w * r.u) + p.w * (q.u * r.v - q.v * r.u)
}

/// Signed area of the triangle with normalized vertices `p`, `q`, `r`.
pub fn bary_area(t: &RefTriangle, p: Bary, q: Bary, r: Bary) -> f64 {
    det3(p, q, r) * t.k
}

/// Re-expresses `p_inner`, given relative to triangle `inner`, relative to
/// the outer triangle in which `inner` is expressed.
pub fn change_of_coordinates(inner: [Bary; 3], p_inner: Bary) -> Result<Bary, BaryError> {
    if det3(inner[0], inner[1], inner[2]).abs() < 1e-15 {
        return Err(BaryError::DegenerateTriangle);
    }
    let (p, q, r) = (p_inner.u, p_inner.v, p_inner.w);
    let comb = |f: fn(&Bary) -> f64| f(&inner[0]) * p + f(&inner[1]) * q + f(&inner[2]) * r;
    normalize(Bary::new(comb(|b| b.u), comb(|b| b.v), comb(|b| b.w)))
}

/// Affine combination of the vertices.
pub fn bary_to_cartesian(t: &RefTriangle, p: Bary) -> Point {
    Point::new(
        p.u * t.va.x + p.v * t.vb.x + p.w * t.vc.x,
        p.u * t.va.y + p.v * t.vb.y + p.w * t.vc.y,
    )
}

/// Normalized coordinates from signed sub-triangle areas.
pub fn cartesian_to_bary(t: &RefTriangle, p: Point) -> Result<Bary, BaryError> {
    if t.k == 0.0 || !t.k.is_finite() {
        return Err(BaryError::DegenerateTriangle);
    }
    let u = triangle_area(p, t.vb, t.vc) / t.k;
    let v = triangle_area(t.va, p, t.vc) / t.k;
    let w = triangle_area(t.va, t.vb, p) / t.k;
    Ok(Bary::new(u, v, w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri() -> RefTriangle {
        RefTriangle::new(Point::new(0.1, 0.2), Point::new(3.0, -0.4), Point::new(1.2, 2.5))
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(Bary::new(2.0, 2.0, 2.0)).unwrap();
        assert!((n.u - 1.0 / 3.0).abs() < 1e-15 && (n.w - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(normalize(Bary::new(1.0, -1.0, 0.0)), Err(BaryError::AtInfinity));
        assert_eq!(normalize(Bary::new(0.0, 0.0, 0.0)), Err(BaryError::Degenerate));
    }

    #[test]
    fn vertex_distance_is_side() {
        let t = tri();
        let d = bary_distance(&t, Bary::new(1.0, 0.0, 0.0), Bary::new(0.0, 1.0, 0.0)).unwrap();
        assert!((d - t.c).abs() < 1e-12);
        let p = Bary::new(0.2, 0.3, 0.5);
        assert_eq!(bary_distance(&t, p, p).unwrap(), 0.0);
    }

    #[test]
    fn area_of_reference_vertices() {
        let t = tri();
        let (a, b, c) = (Bary::new(1.0, 0.0, 0.0), Bary::new(0.0, 1.0, 0.0), Bary::new(0.0, 0.0, 1.0));
        assert!((bary_area(&t, a, b, c) - t.k).abs() < 1e-12);
    }

    #[test]
    fn area_cda_is_minus_qk() {
        // D = (p, q, r) with q < 0: [CDA] = -qK.
        let t = tri();
        let d = Bary::new(0.7, -0.4, 0.7);
        let c = Bary::new(0.0, 0.0, 1.0);
        let a = Bary::new(1.0, 0.0, 0.0);
        assert!((bary_area(&t, c, d, a) - 0.4 * t.k).abs() < 1e-12);
    }

    #[test]
    fn identity_change_of_coordinates() {
        let id = [Bary::new(1.0, 0.0, 0.0), Bary::new(0.0, 1.0, 0.0), Bary::new(0.0, 0.0, 1.0)];
        let p = Bary::new(0.3, 0.5, 0.2);
        let r = change_of_coordinates(id, p).unwrap();
        assert!((r.u - 0.3).abs() < 1e-15 && (r.v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn centroid_of_inner_triangle() {
        let inner = [Bary::new(0.5, 0.5, 0.0), Bary::new(0.2, 0.1, 0.7), Bary::new(0.1, 0.6, 0.3)];
        let g = Bary::new(1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0);
        let r = change_of_coordinates(inner, g).unwrap();
        assert!((r.u - 0.8 / 3.0).abs() < 1e-15);
        assert!((r.v - 1.2 / 3.0).abs() < 1e-15);
        assert!((r.w - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn right_triangle_circumcenter_is_hypotenuse_midpoint() {
        let t = RefTriangle::new(Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(0.0, 3.0));
        let o = Point::new(2.0, 1.5);
        let b = cartesian_to_bary(&t, o).unwrap();
        assert!(b.u.abs() < 1e-15 && (b.v - 0.5).abs() < 1e-15 && (b.w - 0.5).abs() < 1e-15);
    }

    #[test]
    fn conversion_round_trip() {
        let t = tri();
        let p = Point::new(1.3, 0.7);
        let q = bary_to_cartesian(&t, cartesian_to_bary(&t, p).unwrap());
        assert!(p.dist(q) < 1e-12);
        let mid = bary_to_cartesian(&t, Bary::new(0.0, 0.5, 0.5));
        assert!(mid.dist(t.vb.midpoint(t.vc)) < 1e-15);
    }
}
