//! Random convex quadrilaterals for every shape class, the algebraic
//! validators that define the classes, and the ancestry graph.

pub mod ancestry;
pub mod shapes;

pub use ancestry::{ancestors, AncestryError, AncestryGraph};
pub use shapes::{ShapeClass, UnknownShape};

use crate::geomcore::{circle_circle_intersection, circle_through, diameter, Circle, Point};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

/// Relative tolerance for shape conditions.
pub const SHAPE_TOL: f64 = 1e-9;
/// Rejection-sampling budget per instance.
pub const MAX_ATTEMPTS: usize = 10_000;
/// Smallest admissible interior angle, degrees.
pub const MIN_ANGLE_DEG: f64 = 10.0;
/// Largest admissible ratio of longest to shortest side.
pub const MAX_SIDE_RATIO: f64 = 10.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("no valid {shape} instance after {attempts} attempts (seed {seed})")]
    Exhausted { shape: ShapeClass, seed: u64, attempts: usize },
}

/// A convex counterclockwise quadrilateral `ABCD` tagged with its class.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadInstance {
    pub shape: ShapeClass,
    #[serde(with = "vertex_pairs")]
    pub vertices: [Point; 4],
    pub seed: u64,
}

mod vertex_pairs {
    use crate::geomcore::Point;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Point; 4], s: S) -> Result<S::Ok, S::Error> {
        v.map(|p| [p.x, p.y]).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<[Point; 4], D::Error> {
        let raw = <[[f64; 2]; 4]>::deserialize(d)?;
        Ok(raw.map(|[x, y]| Point::new(x, y)))
    }
}

impl QuadInstance {
    pub fn new(shape: ShapeClass, vertices: [Point; 4], seed: u64) -> Self {
        Self { shape, vertices, seed }
    }

    /// Side lengths `[a, b, c, d] = [AB, BC, CD, DA]`.
    pub fn sides(&self) -> [f64; 4] {
        let v = &self.vertices;
        [v[0].dist(v[1]), v[1].dist(v[2]), v[2].dist(v[3]), v[3].dist(v[0])]
    }

    /// Diagonal lengths `[p, q] = [AC, BD]`.
    pub fn diagonals(&self) -> [f64; 2] {
        let v = &self.vertices;
        [v[0].dist(v[2]), v[1].dist(v[3])]
    }

    /// Interior angles at `A, B, C, D` in radians.
    pub fn angles(&self) -> [f64; 4] {
        let v = &self.vertices;
        std::array::from_fn(|i| {
            let p = v[(i + 3) % 4].sub(v[i]);
            let n = v[(i + 1) % 4].sub(v[i]);
            n.cross(p).atan2(n.dot(p))
        })
    }

    pub fn diameter(&self) -> f64 {
        diameter(&self.vertices)
    }

    pub fn perimeter(&self) -> f64 {
        self.sides().iter().sum()
    }

    /// Strictly convex with counterclockwise orientation.
    pub fn is_convex_ccw(&self) -> bool {
        let v = &self.vertices;
        (0..4).all(|i| {
            let e1 = v[(i + 1) % 4].sub(v[i]);
            let e2 = v[(i + 2) % 4].sub(v[(i + 1) % 4]);
            e1.cross(e2) > 0.0
        })
    }
}

fn near(x: f64, y: f64, scale: f64) -> bool {
    (x - y).abs() <= SHAPE_TOL * scale
}

fn parallel(p0: Point, p1: Point, q0: Point, q1: Point) -> bool {
    let (u, w) = (p1.sub(p0), q1.sub(q0));
    u.cross(w).abs() <= SHAPE_TOL * u.norm() * w.norm()
}

fn cyclic(q: &QuadInstance) -> bool {
    let v = &q.vertices;
    match circle_through(v[0], v[1], v[2]) {
        Ok(c) => c.residual(v[3]) <= SHAPE_TOL * q.diameter(),
        Err(_) => false,
    }
}

/// True when the defining condition of `shape` holds for some labeling
/// of the vertices compatible with the class.
pub fn validate(q: &QuadInstance, shape: ShapeClass) -> bool {
    use ShapeClass::*;
    let [a, b, c, d] = q.sides();
    let [p, qd] = q.diagonals();
    let per = a + b + c + d;
    let sq = per * per;
    let v = &q.vertices;
    let ang = q.angles();
    let right = |i: usize| (ang[i] - FRAC_PI_2).abs() <= SHAPE_TOL * PI;
    let same_angle = |i: usize, j: usize| (ang[i] - ang[j]).abs() <= SHAPE_TOL * PI;
    match shape {
        General => q.is_convex_ccw(),
        Cyclic => cyclic(q),
        Tangential => near(a + c, b + d, per),
        Extangential => near(a + b, c + d, per) || near(b + c, d + a, per),
        Parallelogram => near(a, c, per) && near(b, d, per) && parallel(v[0], v[1], v[3], v[2]),
        EqualProdOpp => near(a * c, b * d, sq),
        EqualProdAdj => near(a * b, c * d, sq) || near(b * c, d * a, sq),
        Orthodiagonal => near(a * a + c * c, b * b + d * d, sq),
        Equidiagonal => near(p, qd, per),
        Pythagorean => near(a * a + b * b, c * c + d * d, sq) || near(b * b + c * c, d * d + a * a, sq),
        Kite => (near(a, b, per) && near(c, d, per)) || (near(b, c, per) && near(d, a, per)),
        Trapezoid => parallel(v[0], v[1], v[3], v[2]) || parallel(v[1], v[2], v[0], v[3]),
        Rhombus => near(a, b, per) && near(b, c, per) && near(c, d, per),
        Rectangle => (0..4).all(right),
        Hjelmslev => (right(0) && right(2)) || (right(1) && right(3)),
        IsoscelesTrapezoid => (same_angle(0, 1) && same_angle(2, 3)) || (same_angle(1, 2) && same_angle(3, 0)),
        ApQuad => {
            let s = [a, b, c, d];
            (0..4).any(|r| {
                let f = |k: usize| s[(r + k) % 4];
                let g = |k: usize| s[(r + 4 - k) % 4];
                let ap = |h: &dyn Fn(usize) -> f64| near(h(1) - h(0), h(2) - h(1), per) && near(h(2) - h(1), h(3) - h(2), per);
                ap(&f) || ap(&g)
            })
        }
        Bicentric => validate(q, Cyclic) && validate(q, Tangential),
        Exbicentric => validate(q, Cyclic) && validate(q, Extangential),
        BicentricTrapezoid => validate(q, Bicentric) && validate(q, IsoscelesTrapezoid),
        CyclicOrthodiagonal => validate(q, Cyclic) && validate(q, Orthodiagonal),
        EquidiagonalKite => validate(q, Equidiagonal) && validate(q, Kite),
        EquidiagonalOrthodiagonal => validate(q, Equidiagonal) && validate(q, Orthodiagonal),
        EquidiagonalOrthodiagonalTrapezoid => validate(q, EquidiagonalOrthodiagonal) && validate(q, Trapezoid),
        Harmonic => validate(q, Cyclic) && validate(q, EqualProdOpp),
        OrthodiagonalTrapezoid => validate(q, Orthodiagonal) && validate(q, Trapezoid),
        TangentialTrapezoid => validate(q, Tangential) && validate(q, Trapezoid),
        Square => validate(q, Rhombus) && validate(q, Rectangle),
    }
}

/// Diagonal-point parameterization: `A = p1 e1`, `C = -p2 e1`,
/// `B = q1 e2`, `D = -q2 e2` with `e2` at angle `phi` from `e1`.
#[derive(Debug, Clone, Copy)]
struct Cross {
    p1: f64,
    p2: f64,
    q1: f64,
    q2: f64,
    phi: f64,
}

impl Cross {
    fn random(rng: &mut ChaCha8Rng) -> Self {
        Self {
            p1: rng.gen_range(0.25..1.0),
            p2: rng.gen_range(0.25..1.0),
            q1: rng.gen_range(0.25..1.0),
            q2: rng.gen_range(0.25..1.0),
            phi: rng.gen_range(0.35..PI - 0.35),
        }
    }

    fn vertices(&self) -> [Point; 4] {
        let e2 = Point::new(self.phi.cos(), self.phi.sin());
        [Point::new(self.p1, 0.0), e2.scale(self.q1), Point::new(-self.p2, 0.0), e2.scale(-self.q2)]
    }
}

fn sides_of(v: &[Point; 4]) -> [f64; 4] {
    [v[0].dist(v[1]), v[1].dist(v[2]), v[2].dist(v[3]), v[3].dist(v[0])]
}

/// Picks a random root of `f` on `[lo, hi]` by grid scan and bisection.
fn solve_1d(rng: &mut ChaCha8Rng, lo: f64, hi: f64, f: impl Fn(f64) -> Option<f64>) -> Option<f64> {
    const GRID: usize = 64;
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for k in 0..=GRID {
        let t = lo + (hi - lo) * k as f64 / GRID as f64;
        let cur = f(t).map(|y| (t, y));
        if let (Some((t0, y0)), Some((t1, y1))) = (prev, cur) {
            if y0 == 0.0 {
                return Some(t0);
            }
            if y0.signum() != y1.signum() {
                brackets.push((t0, t1));
            }
        }
        prev = cur;
    }
    if brackets.is_empty() {
        return None;
    }
    let (mut a, mut b) = brackets[rng.gen_range(0..brackets.len())];
    let fa0 = f(a)?;
    let mut sa = fa0.signum();
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m)?;
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == sa {
            a = m;
            sa = fm.signum();
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Constructs raw vertices satisfying the class condition, before the
/// random similarity transform and guards.
fn construct(shape: ShapeClass, rng: &mut ChaCha8Rng) -> Option<[Point; 4]> {
    use ShapeClass::*;
    let x = Cross::random(rng);
    let solve_q2 = |rng: &mut ChaCha8Rng, x: Cross, res: fn(&[f64; 4]) -> f64| {
        let q2 = solve_1d(rng, 0.05, 4.0, |t| Some(res(&sides_of(&Cross { q2: t, ..x }.vertices()))))?;
        Some(Cross { q2, ..x }.vertices())
    };
    // Cyclic family: the chord relation p1 p2 = q1 q2 fixes q2 from q1.
    let solve_cyclic_q1 = |rng: &mut ChaCha8Rng, x: Cross, res: fn(&[f64; 4]) -> f64| {
        let at = |t: f64| Cross { q1: t, q2: x.p1 * x.p2 / t, ..x };
        let q1 = solve_1d(rng, 0.05, 4.0, |t| Some(res(&sides_of(&at(t).vertices()))))?;
        Some(at(q1).vertices())
    };
    let tangential = |s: &[f64; 4]| s[0] + s[2] - s[1] - s[3];
    let extangential = |s: &[f64; 4]| s[0] + s[1] - s[2] - s[3];
    let verts = match shape {
        General => x.vertices(),
        Orthodiagonal => Cross { phi: FRAC_PI_2, ..x }.vertices(),
        Equidiagonal => Cross { q2: x.p1 + x.p2 - x.q1, ..x }.vertices(),
        EquidiagonalOrthodiagonal => Cross { q2: x.p1 + x.p2 - x.q1, phi: FRAC_PI_2, ..x }.vertices(),
        Parallelogram => Cross { p2: x.p1, q2: x.q1, ..x }.vertices(),
        Rhombus => Cross { p2: x.p1, q2: x.q1, phi: FRAC_PI_2, ..x }.vertices(),
        Rectangle => Cross { p2: x.p1, q1: x.p1, q2: x.p1, ..x }.vertices(),
        Square => Cross { p2: x.p1, q1: x.p1, q2: x.p1, phi: FRAC_PI_2, ..x }.vertices(),
        Kite => Cross { p2: x.p1, phi: FRAC_PI_2, ..x }.vertices(),
        EquidiagonalKite => Cross { p2: x.p1, q2: 2.0 * x.p1 - x.q1, phi: FRAC_PI_2, ..x }.vertices(),
        Cyclic => Cross { q2: x.p1 * x.p2 / x.q1, ..x }.vertices(),
        CyclicOrthodiagonal => Cross { q2: x.p1 * x.p2 / x.q1, phi: FRAC_PI_2, ..x }.vertices(),
        Trapezoid => Cross { q2: x.q1 * x.p2 / x.p1, ..x }.vertices(),
        OrthodiagonalTrapezoid => Cross { q2: x.q1 * x.p2 / x.p1, phi: FRAC_PI_2, ..x }.vertices(),
        IsoscelesTrapezoid => Cross { q1: x.p1, q2: x.p2, ..x }.vertices(),
        EquidiagonalOrthodiagonalTrapezoid => Cross { q1: x.p1, q2: x.p2, phi: FRAC_PI_2, ..x }.vertices(),
        BicentricTrapezoid => {
            let (p, r) = (x.p1, x.p2);
            let cos_phi = -(p - r).powi(2) / (p * p + 6.0 * p * r + r * r);
            Cross { q1: p, q2: r, phi: cos_phi.acos(), ..x }.vertices()
        }
        Tangential => solve_q2(rng, x, tangential)?,
        Extangential => solve_q2(rng, x, extangential)?,
        EqualProdOpp => solve_q2(rng, x, |s| s[0] * s[2] - s[1] * s[3])?,
        EqualProdAdj => solve_q2(rng, x, |s| s[0] * s[1] - s[2] * s[3])?,
        Pythagorean => solve_q2(rng, x, |s| s[0] * s[0] + s[1] * s[1] - s[2] * s[2] - s[3] * s[3])?,
        Harmonic => solve_cyclic_q1(rng, x, |s| s[0] * s[2] - s[1] * s[3])?,
        Bicentric => solve_cyclic_q1(rng, x, tangential)?,
        Exbicentric => solve_cyclic_q1(rng, x, extangential)?,
        TangentialTrapezoid => {
            let at = |t: f64| Cross { q1: t, q2: t * x.p2 / x.p1, ..x };
            let q1 = solve_1d(rng, 0.05, 4.0, |t| Some(tangential(&sides_of(&at(t).vertices()))))?;
            at(q1).vertices()
        }
        Hjelmslev => {
            // BD is a diameter of the unit circle; A and C lie on opposite arcs.
            let alpha = rng.gen_range(-PI + 0.2..-0.2);
            let gamma = rng.gen_range(0.2..PI - 0.2);
            let on = |t: f64| Point::new(t.cos(), t.sin());
            [on(alpha), on(0.0), on(gamma), on(PI)]
        }
        ApQuad => {
            let s0 = rng.gen_range(0.3..1.0);
            let delta = rng.gen_range(-0.2..0.3);
            let s = [s0, s0 + delta, s0 + 2.0 * delta, s0 + 3.0 * delta];
            if s.iter().any(|v| *v <= 0.05) {
                return None;
            }
            let theta: f64 = rng.gen_range(0.5..2.6);
            let a = Point::new(0.0, 0.0);
            let b = Point::new(s[0], 0.0);
            let c = b.add(Point::new(-theta.cos(), theta.sin()).scale(s[1]));
            let hits = circle_circle_intersection(&Circle { center: c, radius: s[2] }, &Circle { center: a, radius: s[3] });
            let pick = hits.into_iter().find(|d| {
                let q = QuadInstance::new(ApQuad, [a, b, c, *d], 0);
                q.is_convex_ccw()
            })?;
            [a, b, c, pick]
        }
    };
    Some(verts)
}

fn guards_ok(q: &QuadInstance) -> bool {
    if !q.is_convex_ccw() || q.vertices.iter().any(|p| !p.is_finite()) {
        return false;
    }
    let min_angle = MIN_ANGLE_DEG.to_radians();
    if q.angles().iter().any(|t| *t < min_angle) {
        return false;
    }
    let s = q.sides();
    let (lo, hi) = s.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), v| (lo.min(*v), hi.max(*v)));
    if hi / lo > MAX_SIDE_RATIO {
        return false;
    }
    let d = q.diameter();
    (0.5..=4.0).contains(&d)
}

/// Random rotation, translation and rescaling to a diameter in `[0.8, 2.5]`.
fn place(v: [Point; 4], rng: &mut ChaCha8Rng) -> [Point; 4] {
    let theta = rng.gen_range(0.0..2.0 * PI);
    let target = rng.gen_range(0.8..2.5);
    let shift = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let k = target / diameter(&v);
    v.map(|p| p.scale(k).rotate(theta).add(shift))
}

fn shape_salt(shape: ShapeClass) -> u64 {
    (shape as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

/// A random instance of `shape`, deterministic in `seed`. The instance
/// satisfies its own condition and no condition outside its ancestry.
pub fn generate(shape: ShapeClass, seed: u64) -> Result<QuadInstance, GenError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ shape_salt(shape));
    let allowed = AncestryGraph::bundled().closure([shape]);
    for _ in 0..MAX_ATTEMPTS {
        let Some(raw) = construct(shape, &mut rng) else { continue };
        let q = QuadInstance::new(shape, place(raw, &mut rng), seed);
        if !guards_ok(&q) || !validate(&q, shape) {
            continue;
        }
        if ShapeClass::ALL.iter().any(|s| !allowed.contains(s) && validate(&q, *s)) {
            continue;
        }
        return Ok(q);
    }
    Err(GenError::Exhausted { shape, seed, attempts: MAX_ATTEMPTS })
}
