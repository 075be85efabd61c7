//! Shared test helpers: Cartesian constructions of triangle centers that do
//! not go through barycentric formulas, and a seeded triangle source.

#![allow(dead_code)]

use cq_core::barycentric::{bary_to_cartesian, RefTriangle};
use cq_core::centerdefs::{eval_center, CenterRegistry};
use cq_core::geomcore::Point;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn p(x: f64, y: f64) -> Point {
    Point::new(x, y)
}

fn lerp(a: Point, b: Point, t: f64) -> Point {
    p(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y))
}

fn mid(a: Point, b: Point) -> Point {
    lerp(a, b, 0.5)
}

fn reflect(x: Point, center: Point) -> Point {
    p(2.0 * center.x - x.x, 2.0 * center.y - x.y)
}

fn dist(a: Point, b: Point) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Intersection of line `p1 + s*d1` with line `p2 + t*d2` by Cramer's rule.
fn meet(p1: Point, d1: Point, p2: Point, d2: Point) -> Point {
    let det = d1.x * (-d2.y) - d1.y * (-d2.x);
    let (rx, ry) = (p2.x - p1.x, p2.y - p1.y);
    let s = (rx * (-d2.y) - ry * (-d2.x)) / det;
    p(p1.x + s * d1.x, p1.y + s * d1.y)
}

fn dir(a: Point, b: Point) -> Point {
    p(b.x - a.x, b.y - a.y)
}

fn unit(v: Point) -> Point {
    let n = v.x.hypot(v.y);
    p(v.x / n, v.y / n)
}

fn perp(v: Point) -> Point {
    p(-v.y, v.x)
}

/// Cevians from A to `d` on BC and from B to `e` on CA.
fn cevians(a: Point, b: Point, d: Point, e: Point) -> Point {
    meet(a, dir(a, d), b, dir(b, e))
}

fn circumcenter(a: Point, b: Point, c: Point) -> Point {
    meet(mid(a, b), perp(dir(a, b)), mid(b, c), perp(dir(b, c)))
}

fn orthocenter(a: Point, b: Point, c: Point) -> Point {
    meet(a, perp(dir(b, c)), b, perp(dir(c, a)))
}

fn incenter(a: Point, b: Point, c: Point) -> Point {
    let da = p(unit(dir(a, b)).x + unit(dir(a, c)).x, unit(dir(a, b)).y + unit(dir(a, c)).y);
    let db = p(unit(dir(b, a)).x + unit(dir(b, c)).x, unit(dir(b, a)).y + unit(dir(b, c)).y);
    meet(a, da, b, db)
}

/// Apex of the equilateral triangle erected outward on `xy`, away from `z`.
fn outer_apex(x: Point, y: Point, z: Point) -> Point {
    let m = mid(x, y);
    let n = unit(perp(dir(x, y)));
    let h = dist(x, y) * 3f64.sqrt() / 2.0;
    let side = (z.x - m.x) * n.x + (z.y - m.y) * n.y;
    let sgn = if side > 0.0 { -1.0 } else { 1.0 };
    p(m.x + sgn * h * n.x, m.y + sgn * h * n.y)
}

/// Centers with an independent Cartesian construction.
pub const ORACLE_CENTERS: &[u32] = &[1, 2, 3, 4, 5, 6, 7, 8, 10, 13, 20, 140, 376, 381, 382, 546];

/// The center `index` of triangle `abc`, constructed with ruler and compass
/// steps only.
pub fn cartesian_center(index: u32, a: Point, b: Point, c: Point) -> Point {
    let (la, lb, lc) = (dist(b, c), dist(c, a), dist(a, b));
    let s = 0.5 * (la + lb + lc);
    let g = p((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0);
    let o = circumcenter(a, b, c);
    let h = orthocenter(a, b, c);
    let n = circumcenter(mid(b, c), mid(c, a), mid(a, b));
    match index {
        1 => incenter(a, b, c),
        2 => g,
        3 => o,
        4 => h,
        5 => n,
        // BD/DC = c^2/b^2 on each side.
        6 => {
            let d = lerp(b, c, lc * lc / (lc * lc + lb * lb));
            let e = lerp(c, a, la * la / (la * la + lc * lc));
            cevians(a, b, d, e)
        }
        // Incircle touch points.
        7 => cevians(a, b, lerp(b, c, (s - lb) / la), lerp(c, a, (s - lc) / lb)),
        // Excircle touch points.
        8 => cevians(a, b, lerp(b, c, (s - lc) / la), lerp(c, a, (s - la) / lb)),
        10 => incenter(mid(b, c), mid(c, a), mid(a, b)),
        13 => {
            let a1 = outer_apex(b, c, a);
            let b1 = outer_apex(c, a, b);
            meet(a, dir(a, a1), b, dir(b, b1))
        }
        20 => reflect(h, o),
        140 => mid(o, n),
        376 => reflect(g, o),
        381 => mid(g, h),
        382 => reflect(o, h),
        546 => mid(h, n),
        other => panic!("no construction for X({other})"),
    }
}

/// A random triangle with every angle at least 15 degrees.
pub fn random_triangle(rng: &mut ChaCha8Rng) -> [Point; 3] {
    loop {
        let v: [Point; 3] = std::array::from_fn(|_| p(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let min_angle = (0..3)
            .map(|i| {
                let (x, y, z) = (v[i], v[(i + 1) % 3], v[(i + 2) % 3]);
                let (u, w) = (dir(x, y), dir(x, z));
                ((u.x * w.x + u.y * w.y) / (u.x.hypot(u.y) * w.x.hypot(w.y))).clamp(-1.0, 1.0).acos()
            })
            .fold(f64::INFINITY, f64::min);
        if min_angle > 15f64.to_radians() {
            return v;
        }
    }
}

/// Largest distance, relative to the triangle diameter, between the
/// barycentric evaluation and the Cartesian construction over `cases` cases.
pub fn bary_oracle_residual(reg: &CenterRegistry, cases: usize, seed: u64) -> (f64, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for k in 0..cases {
        let index = ORACLE_CENTERS[k % ORACLE_CENTERS.len()];
        let Some(def) = reg.get(index) else { continue };
        let [a, b, c] = random_triangle(&mut rng);
        let t = RefTriangle::new(a, b, c);
        let got = bary_to_cartesian(&t, eval_center(def, t.a, t.b, t.c).expect("finite center"));
        let want = cartesian_center(index, a, b, c);
        let diam = dist(a, b).max(dist(b, c)).max(dist(c, a));
        worst = worst.max(dist(got, want) / diam);
        checked += 1;
    }
    (worst, checked)
}
