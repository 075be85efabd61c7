//! Radiator points of a quadrilateral, their applicability conditions, and
//! the coincidences between radiators on particular shape classes.

use crate::geomcore::{
    circle_circle_intersection, circle_through, line_intersection, nine_point_circle, triangle_orthocenter, Circle,
    GeomError, Line, Point,
};
use crate::quadgen::{AncestryGraph, QuadInstance, ShapeClass};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Accepted construction residual as a fraction of the diameter.
pub const RESIDUAL_TOL: f64 = 1e-7;
/// Minimum distance from a radiator to any sideline, relative to the diameter.
pub const SIDELINE_TOL: f64 = 1e-9;
/// Angular tolerance below which opposite sides count as parallel.
pub const PARALLEL_ANGLE_TOL: f64 = 1e-9;

macro_rules! radiators {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Points used as radiators.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum RadiatorKind {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl RadiatorKind {
            pub const ALL: &'static [RadiatorKind] = &[$(RadiatorKind::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(RadiatorKind::$variant => $name,)*
                }
            }
        }
    };
}

radiators! {
    ArbitraryPoint => "arbitrary",
    DiagonalPoint => "diagonal",
    PonceletPoint => "poncelet",
    SteinerPoint => "steiner",
    Circumcenter => "circumcenter",
    Incenter => "incenter",
    Anticenter => "anticenter",
    Orthocenter => "orthocenter",
    VertexCentroid => "centroid",
    ThirdDiagonalMidpoint => "thirdDiagonal",
}

impl fmt::Display for RadiatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown radiator '{0}'")]
pub struct UnknownRadiator(pub String);

impl FromStr for RadiatorKind {
    type Err = UnknownRadiator;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RadiatorKind::ALL
            .iter()
            .copied()
            .find(|r| r.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownRadiator(s.to_string()))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RadiatorError {
    #[error("radiator not defined for this quadrilateral")]
    NotApplicable,
    #[error("construction residual {residual:e} exceeds tolerance")]
    Residual { residual: f64 },
    #[error("radiator lies on a sideline")]
    OnSideline,
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// A constructed radiator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiatorResult {
    pub point: Point,
    /// Strictly inside the quadrilateral.
    pub inside: bool,
    /// Largest construction residual, absolute.
    pub residual: f64,
}

/// Point strictly inside a counterclockwise convex quadrilateral.
pub fn is_inside(q: &QuadInstance, p: Point) -> bool {
    let v = &q.vertices;
    (0..4).all(|i| v[(i + 1) % 4].sub(v[i]).cross(p.sub(v[i])) > 0.0)
}

fn side_lines(q: &QuadInstance) -> Result<[Line; 4], GeomError> {
    let v = &q.vertices;
    Ok([Line::through(v[0], v[1])?, Line::through(v[1], v[2])?, Line::through(v[2], v[3])?, Line::through(v[3], v[0])?])
}

fn finish(q: &QuadInstance, point: Point, residual: f64) -> Result<RadiatorResult, RadiatorError> {
    let diam = q.diameter();
    if !point.is_finite() || !(residual <= RESIDUAL_TOL * diam) {
        return Err(RadiatorError::Residual { residual });
    }
    Ok(RadiatorResult { point, inside: is_inside(q, point), residual })
}

/// Intersection of the diagonals.
pub fn diagonal_point(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    let v = &q.vertices;
    let p = line_intersection(&Line::through(v[0], v[2])?, &Line::through(v[1], v[3])?)?;
    finish(q, p, 0.0)
}

/// Common point of four circles: intersect the first two and keep the
/// candidate closest to the remaining two.
fn common_point(q: &QuadInstance, circles: [Circle; 4]) -> Result<RadiatorResult, RadiatorError> {
    let cands = circle_circle_intersection(&circles[0], &circles[1]);
    let best = cands
        .into_iter()
        .map(|p| (p, circles[2].residual(p).max(circles[3].residual(p))))
        .min_by(|x, y| x.1.total_cmp(&y.1));
    match best {
        Some((p, r)) => finish(q, p, r),
        None => Err(RadiatorError::Residual { residual: f64::INFINITY }),
    }
}

/// Common point of the nine-point circles of the four component triangles.
pub fn poncelet_point(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    let [a, b, c, d] = q.vertices;
    common_point(
        q,
        [nine_point_circle(b, c, d)?, nine_point_circle(a, c, d)?, nine_point_circle(a, b, d)?, nine_point_circle(a, b, c)?],
    )
}

/// Circle through the midpoints of the segments from `v` to the others.
fn midray_circle(v: Point, others: [Point; 3]) -> Result<Circle, GeomError> {
    circle_through(v.midpoint(others[0]), v.midpoint(others[1]), v.midpoint(others[2]))
}

/// Common point of the four midray circles.
pub fn steiner_point(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    let [a, b, c, d] = q.vertices;
    common_point(
        q,
        [midray_circle(a, [b, c, d])?, midray_circle(b, [c, d, a])?, midray_circle(c, [d, a, b])?, midray_circle(d, [a, b, c])?],
    )
}

/// Center of the circumscribed circle.
pub fn circumcenter(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    if !crate::quadgen::validate(q, ShapeClass::Cyclic) {
        return Err(RadiatorError::NotApplicable);
    }
    let [a, b, c, d] = q.vertices;
    let circ = circle_through(a, b, c)?;
    finish(q, circ.center, circ.residual(d))
}

/// Center of the inscribed circle: the meet of the bisectors at `A` and `B`.
pub fn incenter(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    if !crate::quadgen::validate(q, ShapeClass::Tangential) {
        return Err(RadiatorError::NotApplicable);
    }
    let [a, b, c, d] = q.vertices;
    let unit = |p: Point| p.scale(1.0 / p.norm());
    let bis = |at: Point, n1: Point, n2: Point| {
        let dir = unit(n1.sub(at)).add(unit(n2.sub(at)));
        Line::through(at, at.add(dir))
    };
    let p = line_intersection(&bis(a, b, d)?, &bis(b, c, a)?)?;
    let dists = side_lines(q)?.map(|l| l.distance(p));
    let lo = dists.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = dists.iter().cloned().fold(0.0, f64::max);
    finish(q, p, hi - lo)
}

/// Line through the midpoint of side `i` perpendicular to the opposite side.
fn maltitude(v: &[Point; 4], i: usize) -> Result<Line, GeomError> {
    let mid = v[i].midpoint(v[(i + 1) % 4]);
    let opp = v[(i + 3) % 4].sub(v[(i + 2) % 4]);
    Line::perpendicular_through(mid, opp)
}

/// Common point of the four maltitudes of a cyclic quadrilateral.
pub fn anticenter(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    if !crate::quadgen::validate(q, ShapeClass::Cyclic) {
        return Err(RadiatorError::NotApplicable);
    }
    let v = &q.vertices;
    let m = [maltitude(v, 0)?, maltitude(v, 1)?, maltitude(v, 2)?, maltitude(v, 3)?];
    let p = line_intersection(&m[0], &m[1])?;
    finish(q, p, m[2].distance(p).max(m[3].distance(p)))
}

/// Line from vertex `i` to the orthocenter of the other three vertices.
fn vertex_altitude(v: &[Point; 4], i: usize) -> Result<Line, GeomError> {
    let h = triangle_orthocenter(v[(i + 1) % 4], v[(i + 2) % 4], v[(i + 3) % 4])?;
    Line::through(v[i], h)
}

/// Common point of the lines joining each vertex to the orthocenter of the
/// triangle formed by the other three, for a cyclic quadrilateral.
pub fn quad_orthocenter(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    if !crate::quadgen::validate(q, ShapeClass::Cyclic) {
        return Err(RadiatorError::NotApplicable);
    }
    let v = &q.vertices;
    let l = [vertex_altitude(v, 0)?, vertex_altitude(v, 1)?, vertex_altitude(v, 2)?, vertex_altitude(v, 3)?];
    let p = line_intersection(&l[0], &l[1])?;
    finish(q, p, l[2].distance(p).max(l[3].distance(p)))
}

/// Mean of the vertices, checked against the bimedian midpoints.
pub fn vertex_centroid(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    let [a, b, c, d] = q.vertices;
    let g = Point::new(0.25 * (a.x + b.x + c.x + d.x), 0.25 * (a.y + b.y + c.y + d.y));
    let m1 = a.midpoint(b).midpoint(c.midpoint(d));
    let m2 = b.midpoint(c).midpoint(d.midpoint(a));
    finish(q, g, g.dist(m1).max(g.dist(m2)))
}

fn nearly_parallel(p0: Point, p1: Point, q0: Point, q1: Point) -> bool {
    let (u, w) = (p1.sub(p0), q1.sub(q0));
    (u.cross(w) / (u.norm() * w.norm())).abs() < PARALLEL_ANGLE_TOL
}

/// Midpoint of the segment joining `AB ∩ CD` and `BC ∩ DA`.
pub fn third_diagonal_midpoint(q: &QuadInstance) -> Result<RadiatorResult, RadiatorError> {
    let [a, b, c, d] = q.vertices;
    if nearly_parallel(a, b, c, d) || nearly_parallel(b, c, d, a) {
        return Err(RadiatorError::NotApplicable);
    }
    let p = line_intersection(&Line::through(a, b)?, &Line::through(c, d)?)?;
    let r = line_intersection(&Line::through(b, c)?, &Line::through(d, a)?)?;
    finish(q, p.midpoint(r), 0.0)
}

/// Uniform random point strictly inside `q`, kept clear of the sidelines.
pub fn arbitrary_point<R: Rng>(q: &QuadInstance, rng: &mut R) -> Result<RadiatorResult, RadiatorError> {
    let v = &q.vertices;
    let (mut lo, mut hi) = (v[0], v[0]);
    for p in v {
        lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let lines = side_lines(q)?;
    let margin = 1e-3 * q.diameter();
    for _ in 0..10_000 {
        let p = Point::new(rng.gen_range(lo.x..hi.x), rng.gen_range(lo.y..hi.y));
        if is_inside(q, p) && lines.iter().all(|l| l.distance(p) > margin) {
            return finish(q, p, 0.0);
        }
    }
    Err(RadiatorError::Residual { residual: f64::INFINITY })
}

/// Builds radiator `kind` for `q`, rejecting points on a sideline.
pub fn construct<R: Rng>(kind: RadiatorKind, q: &QuadInstance, rng: &mut R) -> Result<RadiatorResult, RadiatorError> {
    use RadiatorKind::*;
    let r = match kind {
        ArbitraryPoint => arbitrary_point(q, rng),
        DiagonalPoint => diagonal_point(q),
        PonceletPoint => poncelet_point(q),
        SteinerPoint => steiner_point(q),
        Circumcenter => circumcenter(q),
        Incenter => incenter(q),
        Anticenter => anticenter(q),
        Orthocenter => quad_orthocenter(q),
        VertexCentroid => vertex_centroid(q),
        ThirdDiagonalMidpoint => third_diagonal_midpoint(q),
    }?;
    let tol = SIDELINE_TOL * q.diameter();
    if side_lines(q)?.iter().any(|l| l.distance(r.point) < tol) {
        return Err(RadiatorError::OnSideline);
    }
    Ok(r)
}

/// Whether `kind` is defined on every instance of `shape`.
pub fn applies_to(kind: RadiatorKind, shape: ShapeClass) -> bool {
    let closure = AncestryGraph::bundled().closure([shape]);
    match kind {
        RadiatorKind::Circumcenter | RadiatorKind::Anticenter | RadiatorKind::Orthocenter => {
            closure.contains(&ShapeClass::Cyclic)
        }
        RadiatorKind::Incenter => closure.contains(&ShapeClass::Tangential),
        RadiatorKind::ThirdDiagonalMidpoint => !closure.contains(&ShapeClass::Trapezoid),
        _ => true,
    }
}

/// On `shape` and its descendants, `radiator` coincides with `same_as`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coincidence {
    pub radiator: RadiatorKind,
    pub same_as: RadiatorKind,
    pub shape: ShapeClass,
}

/// Known coincidences. Findings for `radiator` on these shapes duplicate
/// those of `same_as` and are suppressed.
pub const COINCIDENCES: &[Coincidence] = &[
    Coincidence { radiator: RadiatorKind::PonceletPoint, same_as: RadiatorKind::DiagonalPoint, shape: ShapeClass::Orthodiagonal },
    Coincidence { radiator: RadiatorKind::PonceletPoint, same_as: RadiatorKind::DiagonalPoint, shape: ShapeClass::Parallelogram },
    Coincidence { radiator: RadiatorKind::SteinerPoint, same_as: RadiatorKind::DiagonalPoint, shape: ShapeClass::Parallelogram },
    Coincidence { radiator: RadiatorKind::SteinerPoint, same_as: RadiatorKind::Circumcenter, shape: ShapeClass::Cyclic },
    Coincidence { radiator: RadiatorKind::Anticenter, same_as: RadiatorKind::PonceletPoint, shape: ShapeClass::Cyclic },
    Coincidence { radiator: RadiatorKind::Anticenter, same_as: RadiatorKind::DiagonalPoint, shape: ShapeClass::CyclicOrthodiagonal },
    Coincidence { radiator: RadiatorKind::Orthocenter, same_as: RadiatorKind::Anticenter, shape: ShapeClass::Cyclic },
    Coincidence { radiator: RadiatorKind::Orthocenter, same_as: RadiatorKind::DiagonalPoint, shape: ShapeClass::Rectangle },
    Coincidence { radiator: RadiatorKind::Circumcenter, same_as: RadiatorKind::DiagonalPoint, shape: ShapeClass::Rectangle },
    Coincidence { radiator: RadiatorKind::Incenter, same_as: RadiatorKind::DiagonalPoint, shape: ShapeClass::Rhombus },
    Coincidence { radiator: RadiatorKind::Incenter, same_as: RadiatorKind::VertexCentroid, shape: ShapeClass::BicentricTrapezoid },
    Coincidence { radiator: RadiatorKind::VertexCentroid, same_as: RadiatorKind::DiagonalPoint, shape: ShapeClass::Parallelogram },
];

/// The first coincidence rule covering `radiator` on `shape`.
pub fn coincidence_for(radiator: RadiatorKind, shape: ShapeClass) -> Option<Coincidence> {
    let closure = AncestryGraph::bundled().closure([shape]);
    COINCIDENCES.iter().copied().find(|c| c.radiator == radiator && closure.contains(&c.shape))
}
