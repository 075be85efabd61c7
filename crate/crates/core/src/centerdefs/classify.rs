//! Behavior of a center on isosceles and right triangles, measured over
//! seeded random samples.

use super::{eval_center, CenterDef, EvalError};
use crate::barycentric::Bary;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default number of random triangles per classification.
pub const CLASSIFY_SAMPLES: usize = 8;
/// Agreement tolerance for coincidences and constant ratios.
pub const CLASSIFY_TOL: f64 = 1e-9;

const CLASSIFY_SEED: u64 = 0x15_0c_e1_e5;

/// Where a center sits in an isosceles triangle with apex `A` (`b = c`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IsoscelesBehavior {
    AtApex,
    AtBaseMidpoint,
    AtInfinity,
    /// Constant ratio `XM/AM = u/(u+2v)` along the axis.
    Ratio(f64),
    Nonconstant,
    Undefined,
}

/// Where a center sits in a right triangle with the right angle at `A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RightTriangleBehavior {
    AtHypotenuseMidpoint,
    AtRightAngleVertex,
    /// On the median `AM` with constant `AM/AX`.
    OnMedian(f64),
    OnMedianNonconstant,
    NotOnMedian,
    AtInfinity,
    Undefined,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Sample {
    Infinite,
    Undefined,
    Point(Bary),
}

fn sample(def: &CenterDef, a: f64, b: f64, c: f64) -> Sample {
    match eval_center(def, a, b, c) {
        Ok(p) => Sample::Point(p),
        Err(EvalError::AtInfinity) => Sample::Infinite,
        Err(EvalError::Undefined) => Sample::Undefined,
    }
}

fn spread(xs: &[f64]) -> f64 {
    let lo = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    (hi - lo) / hi.abs().max(lo.abs()).max(1.0)
}

/// Classifies on `samples` random isosceles triangles with legs 1.
pub fn classify_isosceles_behavior(def: &CenterDef, samples: usize) -> IsoscelesBehavior {
    let mut rng = ChaCha8Rng::seed_from_u64(CLASSIFY_SEED);
    let mut ratios = Vec::new();
    let (mut apex, mut mid, mut inf, mut undef) = (0, 0, 0, 0);
    for _ in 0..samples.max(1) {
        let base = rng.gen_range(0.35..1.85);
        match sample(def, base, 1.0, 1.0) {
            Sample::Infinite => inf += 1,
            Sample::Undefined => undef += 1,
            Sample::Point(p) => {
                let ratio = p.u / (p.u + 2.0 * p.v);
                if (p.u - 1.0).abs() < CLASSIFY_TOL && p.v.abs() < CLASSIFY_TOL {
                    apex += 1;
                } else if p.u.abs() < CLASSIFY_TOL {
                    mid += 1;
                }
                ratios.push(ratio);
            }
        }
    }
    let n = samples.max(1);
    if apex == n {
        IsoscelesBehavior::AtApex
    } else if mid == n {
        IsoscelesBehavior::AtBaseMidpoint
    } else if inf == n {
        IsoscelesBehavior::AtInfinity
    } else if undef == n {
        IsoscelesBehavior::Undefined
    } else if ratios.len() == n && spread(&ratios) < CLASSIFY_TOL {
        IsoscelesBehavior::Ratio(ratios[0])
    } else {
        IsoscelesBehavior::Nonconstant
    }
}

/// Classifies on `samples` random right triangles (`a^2 = b^2 + c^2`).
pub fn classify_right_triangle_ratio(def: &CenterDef, samples: usize) -> RightTriangleBehavior {
    let mut rng = ChaCha8Rng::seed_from_u64(CLASSIFY_SEED ^ 0x9e37);
    let n = samples.max(1);
    let (mut inf, mut undef, mut off, mut mid, mut vertex) = (0, 0, 0, 0, 0);
    let mut ratios = Vec::new();
    for _ in 0..n {
        let theta: f64 = rng.gen_range(0.25..1.3);
        let (b, c) = (theta.cos(), theta.sin());
        match sample(def, 1.0, b, c) {
            Sample::Infinite => inf += 1,
            Sample::Undefined => undef += 1,
            Sample::Point(p) => {
                let l1 = p.u.abs() + p.v.abs() + p.w.abs();
                if (p.v - p.w).abs() >= CLASSIFY_TOL * l1 {
                    off += 1;
                } else if p.u.abs() < CLASSIFY_TOL {
                    mid += 1;
                } else if (p.u - 1.0).abs() < CLASSIFY_TOL {
                    vertex += 1;
                } else {
                    ratios.push(1.0 / (1.0 - p.u).abs());
                }
            }
        }
    }
    if inf == n {
        RightTriangleBehavior::AtInfinity
    } else if undef > 0 && undef + inf == n {
        RightTriangleBehavior::Undefined
    } else if off > 0 || inf > 0 || undef > 0 {
        RightTriangleBehavior::NotOnMedian
    } else if mid == n {
        RightTriangleBehavior::AtHypotenuseMidpoint
    } else if vertex == n {
        RightTriangleBehavior::AtRightAngleVertex
    } else if ratios.len() == n && spread(&ratios) < CLASSIFY_TOL {
        RightTriangleBehavior::OnMedian(ratios[0])
    } else {
        RightTriangleBehavior::OnMedianNonconstant
    }
}
