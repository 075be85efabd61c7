//! Cartesian primitives: points, lines, circles and the intersections and
//! projections used by the radiator constructions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Cross products below this magnitude mean two normalized lines are parallel.
pub const PARALLEL_EPS: f64 = 1e-12;
/// Triangle area below this fraction of the squared scale means collinear points.
pub const COLLINEAR_EPS: f64 = 1e-12;
/// Roots closer than this fraction of the radius collapse to a tangency point.
pub const TANGENCY_EPS: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("lines are parallel")]
    Parallel,
    #[error("points are collinear")]
    Collinear,
    #[error("degenerate line through coincident points")]
    DegenerateLine,
}

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }

    pub fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }

    pub fn scale(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        self.sub(o).norm()
    }

    pub fn midpoint(self, o: Point) -> Point {
        Point::new(0.5 * (self.x + o.x), 0.5 * (self.y + o.y))
    }

    /// Rotation by `theta` radians about the origin.
    pub fn rotate(self, theta: f64) -> Point {
        let (s, c) = theta.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Line `a*x + b*y + c = 0` with `a^2 + b^2 = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Line {
    /// Normalizes arbitrary coefficients.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, GeomError> {
        let n = a.hypot(b);
        if n == 0.0 || !n.is_finite() {
            return Err(GeomError::DegenerateLine);
        }
        Ok(Self { a: a / n, b: b / n, c: c / n })
    }

    /// Line through two distinct points.
    pub fn through(p: Point, q: Point) -> Result<Self, GeomError> {
        let d = q.sub(p);
        Line::new(-d.y, d.x, d.y * p.x - d.x * p.y)
    }

    /// Line through `p` perpendicular to direction `dir`.
    pub fn perpendicular_through(p: Point, dir: Point) -> Result<Self, GeomError> {
        Line::new(dir.x, dir.y, -(dir.x * p.x + dir.y * p.y))
    }

    /// Signed distance of `p` from the line.
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y + self.c
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).abs()
    }

    /// Unit direction vector.
    pub fn direction(&self) -> Point {
        Point::new(-self.b, self.a)
    }
}

/// Circle with positive radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    /// Distance of `p` from the circle itself.
    pub fn residual(&self, p: Point) -> f64 {
        (p.dist(self.center) - self.radius).abs()
    }
}

/// Intersection point of two lines.
pub fn line_intersection(l1: &Line, l2: &Line) -> Result<Point, GeomError> {
    let det = l1.a * l2.b - l1.b * l2.a;
    if det.abs() < PARALLEL_EPS {
        return Err(GeomError::Parallel);
    }
    let x = (l1.b * l2.c - l2.b * l1.c) / det;
    let y = (l2.a * l1.c - l1.a * l2.c) / det;
    Ok(Point::new(x, y))
}

/// Circle through three points.
pub fn circle_through(p1: Point, p2: Point, p3: Point) -> Result<Circle, GeomError> {
    let xs = [p1.x, p2.x, p3.x];
    let ys = [p1.y, p2.y, p3.y];
    let span = |v: [f64; 3]| v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
    let scale = span(xs).max(span(ys));
    let u = p2.sub(p1);
    let v = p3.sub(p1);
    let cross = u.cross(v);
    if !(0.5 * cross.abs() >= COLLINEAR_EPS * scale * scale) || scale == 0.0 {
        return Err(GeomError::Collinear);
    }
    let uu = u.dot(u);
    let vv = v.dot(v);
    let d = 2.0 * cross;
    let cx = (v.y * uu - u.y * vv) / d;
    let cy = (u.x * vv - v.x * uu) / d;
    let rel = Point::new(cx, cy);
    Ok(Circle { center: p1.add(rel), radius: rel.norm() })
}

/// Common points of two circles: empty, a tangency point, or two points.
pub fn circle_circle_intersection(c1: &Circle, c2: &Circle) -> Vec<Point> {
    let d_vec = c2.center.sub(c1.center);
    let d = d_vec.norm();
    if d == 0.0 {
        return Vec::new();
    }
    let (r1, r2) = (c1.radius, c2.radius);
    let tol = TANGENCY_EPS * r1.max(r2);
    if d > r1 + r2 + tol || d < (r1 - r2).abs() - tol {
        return Vec::new();
    }
    let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let h2 = r1 * r1 - along * along;
    let h = if h2 > 0.0 { h2.sqrt() } else { 0.0 };
    let ex = d_vec.scale(1.0 / d);
    let base = c1.center.add(ex.scale(along));
    if 2.0 * h < tol {
        return vec![base];
    }
    let perp = Point::new(-ex.y, ex.x);
    vec![base.add(perp.scale(h)), base.sub(perp.scale(h))]
}

/// Signed area of a triangle, positive when counterclockwise.
pub fn triangle_area(p: Point, q: Point, r: Point) -> f64 {
    0.5 * q.sub(p).cross(r.sub(p))
}

/// Signed area of a polygon. Four points use `[PQR] + [RSP]` exactly.
pub fn shoelace_area(pts: &[Point]) -> f64 {
    match pts.len() {
        0..=2 => 0.0,
        3 => triangle_area(pts[0], pts[1], pts[2]),
        4 => triangle_area(pts[0], pts[1], pts[2]) + triangle_area(pts[2], pts[3], pts[0]),
        n => {
            let mut s = 0.0;
            for i in 1..n - 1 {
                s += triangle_area(pts[0], pts[i], pts[i + 1]);
            }
            s
        }
    }
}

/// Orthogonal projection of `p` onto `l`.
pub fn perpendicular_foot(p: Point, l: &Line) -> Point {
    let s = l.signed_distance(p);
    Point::new(p.x - s * l.a, p.y - s * l.b)
}

/// Largest pairwise distance among the points.
pub fn diameter(pts: &[Point]) -> f64 {
    let mut best = 0.0f64;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            best = best.max(pts[i].dist(pts[j]));
        }
    }
    best
}

/// Orthocenter of a non-degenerate triangle.
pub fn triangle_orthocenter(a: Point, b: Point, c: Point) -> Result<Point, GeomError> {
    let la = Line::perpendicular_through(a, c.sub(b))?;
    let lb = Line::perpendicular_through(b, a.sub(c))?;
    line_intersection(&la, &lb)
}

/// Nine-point circle: the circle through the side midpoints.
pub fn nine_point_circle(a: Point, b: Point, c: Point) -> Result<Circle, GeomError> {
    circle_through(b.midpoint(c), c.midpoint(a), a.midpoint(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(p: Point, q: Point, tol: f64) -> bool {
        p.dist(q) < tol
    }

    #[test]
    fn axes_meet_at_origin() {
        let x0 = Line::new(1.0, 0.0, 0.0).unwrap();
        let y0 = Line::new(0.0, 1.0, 0.0).unwrap();
        assert!(close(line_intersection(&x0, &y0).unwrap(), Point::new(0.0, 0.0), 1e-15));
    }

    #[test]
    fn parallel_verticals() {
        let x0 = Line::new(1.0, 0.0, 0.0).unwrap();
        let x1 = Line::new(1.0, 0.0, -1.0).unwrap();
        assert_eq!(line_intersection(&x0, &x1), Err(GeomError::Parallel));
    }

    #[test]
    fn unit_square_diagonals() {
        let ac = Line::through(Point::new(0.0, 0.0), Point::new(1.0, 1.0)).unwrap();
        let bd = Line::through(Point::new(1.0, 0.0), Point::new(0.0, 1.0)).unwrap();
        assert!(close(line_intersection(&ac, &bd).unwrap(), Point::new(0.5, 0.5), 1e-15));
    }

    #[test]
    fn circle_on_unit_points() {
        let c = circle_through(Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(-1.0, 0.0)).unwrap();
        assert!(close(c.center, Point::new(0.0, 0.0), 1e-15));
        assert!((c.radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn nearly_collinear_rejected() {
        let r = circle_through(Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.5, 1e-15));
        assert_eq!(r, Err(GeomError::Collinear));
    }

    #[test]
    fn nine_point_circle_passes_through_altitude_feet() {
        let (a, b, c) = (Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(0.0, 3.0));
        let npc = nine_point_circle(a, b, c).unwrap();
        // Altitude feet computed directly by projection.
        let feet = [
            perpendicular_foot(a, &Line::through(b, c).unwrap()),
            perpendicular_foot(b, &Line::through(c, a).unwrap()),
            perpendicular_foot(c, &Line::through(a, b).unwrap()),
        ];
        for f in feet {
            assert!(npc.residual(f) < 1e-12, "foot {f:?}");
        }
    }

    #[test]
    fn tangent_circles_meet_once() {
        let c1 = Circle { center: Point::new(0.0, 0.0), radius: 1.0 };
        let c2 = Circle { center: Point::new(2.0, 0.0), radius: 1.0 };
        let pts = circle_circle_intersection(&c1, &c2);
        assert_eq!(pts.len(), 1);
        assert!(close(pts[0], Point::new(1.0, 0.0), 1e-12));
    }

    #[test]
    fn lens_intersection() {
        let c1 = Circle { center: Point::new(0.0, 0.0), radius: 1.0 };
        let c2 = Circle { center: Point::new(1.0, 0.0), radius: 1.0 };
        let pts = circle_circle_intersection(&c1, &c2);
        assert_eq!(pts.len(), 2);
        let h = 3f64.sqrt() / 2.0;
        assert!(pts.iter().any(|p| close(*p, Point::new(0.5, h), 1e-12)));
        assert!(pts.iter().any(|p| close(*p, Point::new(0.5, -h), 1e-12)));
    }

    #[test]
    fn concentric_circles_disjoint() {
        let c1 = Circle { center: Point::new(0.0, 0.0), radius: 1.0 };
        let c2 = Circle { center: Point::new(0.0, 0.0), radius: 2.0 };
        assert!(circle_circle_intersection(&c1, &c2).is_empty());
    }

    #[test]
    fn shoelace_orientation() {
        let sq = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(1.0, 1.0), Point::new(0.0, 1.0)];
        assert_eq!(shoelace_area(&sq), 1.0);
        let mut cw = sq;
        cw.reverse();
        assert_eq!(shoelace_area(&cw), -1.0);
    }

    #[test]
    fn bowtie_has_zero_area() {
        let bow = [Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0)];
        // Independent triangle-sum oracle: half cross products summed by hand.
        let t1 = 0.5 * ((1.0 - 0.0) * (1.0 - 0.0) - (0.0 - 0.0) * (0.0 - 0.0));
        let t2 = 0.5 * ((1.0 - 0.0) * (0.0 - 1.0) - (1.0 - 1.0) * (0.0 - 0.0));
        assert_eq!(t1 + t2, 0.0);
        assert_eq!(shoelace_area(&bow), 0.0);
    }

    #[test]
    fn foot_examples() {
        let y0 = Line::new(0.0, 1.0, 0.0).unwrap();
        assert!(close(perpendicular_foot(Point::new(0.0, 1.0), &y0), Point::new(0.0, 0.0), 1e-15));
        assert!(close(perpendicular_foot(Point::new(2.0, 0.0), &y0), Point::new(2.0, 0.0), 1e-15));
        // x + y = 1; hand solution of the projection system gives (0, 1).
        let l = Line::new(1.0, 1.0, -1.0).unwrap();
        assert!(close(perpendicular_foot(Point::new(3.0, 4.0), &l), Point::new(0.0, 1.0), 1e-12));
    }
}
