//! Executable checks for the proved quantitative results, driven by a
//! JSON manifest of theorem cases.
//!
//! Each case names an anchor in the source tables and a check. Quadrilateral
//! checks run on generated instances; triangle checks run on random right or
//! isosceles triangles. A case passes when its residual stays below the
//! tolerance on every seed.

use crate::centerdefs::{eval_center, eval_raw, parse_expr, CenterRegistry, EvalError};
use crate::centerdefs::Env;
use crate::explorer::sample_instance;
use crate::explorer::square::{square_ratio, SquareOutcome};
use crate::geomcore::Point;
use crate::quadgen::ShapeClass;
use crate::radiators::RadiatorKind;
use crate::relations::{central_quadrilateral, sextuple, side_spread, similarity_scale, signed_area_quad, RelationKind};
use crate::relations::{circumcircle, CentralError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

const BUNDLED_MANIFEST: &str = include_str!("../data/theorems.json");

/// Seeds used when none are given.
pub const DEFAULT_SEEDS: [u64; 5] = [11, 22, 33, 44, 55];

#[derive(Debug, Error)]
pub enum RegressionError {
    #[error("reading manifest: {0}")]
    Io(#[from] std::io::Error),
    #[error("parsing manifest: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad constant '{0}'")]
    Constant(String),
}

/// Position of a center on every isosceles triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum IsoscelesPosition {
    Apex,
    BaseMidpoint,
    Infinity,
}

/// Shape expected of the central quadrilateral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CentralForm {
    Square,
    Kite,
}

/// What a case asserts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Check {
    /// A relation between ABCD and FGHI, with its constant for area ratios.
    Relation {
        shape: ShapeClass,
        radiator: RadiatorKind,
        center: u32,
        relation: RelationKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        constant: Option<String>,
    },
    /// FGHI has a particular shape.
    CentralShape { shape: ShapeClass, radiator: RadiatorKind, center: u32, form: CentralForm },
    /// The central quadrilaterals of two centers are congruent to each other.
    MutualCongruence { shape: ShapeClass, radiator: RadiatorKind, centers: [u32; 2] },
    /// `[ABCD]/[FGHI]` for a square about its center.
    SquareRatio { center: u32, constant: String },
    /// `AM/AX` on right triangles, `M` the hypotenuse midpoint.
    RightRatio { center: u32, constant: String },
    /// The center is the hypotenuse midpoint of every right triangle.
    RightAtHypotenuseMidpoint { center: u32 },
    /// `XM/AM` on isosceles triangles with apex `A`.
    IsoscelesRatio { center: u32, constant: String },
    /// The center's position on every isosceles triangle.
    IsoscelesPosition { center: u32, position: IsoscelesPosition },
}

impl Check {
    /// Centers the check needs from the registry.
    pub fn centers(&self) -> Vec<u32> {
        match self {
            Check::MutualCongruence { centers, .. } => centers.to_vec(),
            Check::Relation { center, .. }
            | Check::CentralShape { center, .. }
            | Check::SquareRatio { center, .. }
            | Check::RightRatio { center, .. }
            | Check::RightAtHypotenuseMidpoint { center }
            | Check::IsoscelesRatio { center, .. }
            | Check::IsoscelesPosition { center, .. } => vec![*center],
        }
    }
}

/// One proved result, as data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TheoremCase {
    pub id: String,
    pub anchor: String,
    pub check: Check,
    pub tolerance: f64,
}

/// Result of running a case.
#[derive(Debug, Clone, PartialEq)]
pub enum CaseStatus {
    Pass,
    Fail(String),
    /// A center the case needs is not in the registry.
    Missing(u32),
    /// The case could not be run (construction failure, bad constant).
    Error(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseReport {
    pub id: String,
    pub status: CaseStatus,
    pub worst_residual: f64,
}

impl CaseReport {
    pub fn passed(&self) -> bool {
        self.status == CaseStatus::Pass
    }
}

/// The bundled manifest.
pub fn bundled_manifest() -> Vec<TheoremCase> {
    serde_json::from_str(BUNDLED_MANIFEST).expect("bundled manifest is valid")
}

pub fn load_manifest(path: &Path) -> Result<Vec<TheoremCase>, RegressionError> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

/// Value of a constant written like `9/2`, `3+2√2` or `(27-10√2)/4`.
pub fn parse_constant(s: &str) -> Result<f64, RegressionError> {
    let mut src = String::new();
    let mut prev_digit = false;
    for ch in s.chars() {
        if ch == '√' {
            src.push_str(if prev_digit { "*sqrt" } else { "sqrt" });
        } else {
            src.push(ch);
        }
        prev_digit = ch.is_ascii_digit();
    }
    let src = wrap_sqrt_args(&src);
    let expr = parse_expr(&src).map_err(|_| RegressionError::Constant(s.to_string()))?;
    let env = Env { a: 0.0, b: 0.0, c: 0.0, s: 0.0, angle_a: 0.0, angle_b: 0.0, angle_c: 0.0 };
    let v = expr.eval(&env).value;
    v.is_finite().then_some(v).ok_or_else(|| RegressionError::Constant(s.to_string()))
}

/// `sqrt2` becomes `sqrt(2)`.
fn wrap_sqrt_args(src: &str) -> String {
    let mut out = String::new();
    let mut rest = src;
    while let Some(i) = rest.find("sqrt") {
        out.push_str(&rest[..i + 4]);
        rest = &rest[i + 4..];
        let n = rest.chars().take_while(|c| c.is_ascii_digit()).count();
        if n > 0 {
            out.push('(');
            out.push_str(&rest[..n]);
            out.push(')');
            rest = &rest[n..];
        }
    }
    out.push_str(rest);
    out
}

fn rel_err(x: f64, expected: f64) -> f64 {
    (x - expected).abs() / expected.abs().max(f64::MIN_POSITIVE)
}

/// Per-seed outcome: a residual, or a reason the check could not hold.
type Probe = Result<f64, CaseStatus>;

fn central_points(shape: ShapeClass, radiator: RadiatorKind, def: &crate::centerdefs::CenterDef, seed: u64) -> Result<([Point; 4], [Point; 4]), CaseStatus> {
    let (q, e) = sample_instance(shape, radiator, seed)
        .map_err(|r| CaseStatus::Error(format!("no instance for {shape} with {radiator}: {r:?}")))?;
    match central_quadrilateral(&q, e, def) {
        Ok(c) => Ok((q.vertices, c.points)),
        Err(CentralError::SkippedInfinity) => Err(CaseStatus::Fail("central point at infinity".into())),
        Err(CentralError::Undefined) => Err(CaseStatus::Fail("central point undefined".into())),
    }
}

fn probe_relation(abcd: &[Point; 4], fghi: &[Point; 4], relation: RelationKind, expected: Option<f64>) -> Probe {
    let ratio = signed_area_quad(abcd).abs() / signed_area_quad(fghi).abs();
    let holds = |ok: bool, what: &str| if ok { Ok(0.0) } else { Err(CaseStatus::Fail(format!("not {what}"))) };
    match relation {
        RelationKind::AreaRatio => {
            let k = expected.ok_or_else(|| CaseStatus::Error("area ratio case without constant".into()))?;
            Ok(rel_err(ratio, k))
        }
        RelationKind::SameArea => Ok(rel_err(ratio, 1.0)),
        RelationKind::SamePerimeter => {
            let (pa, pf) = (sextuple(abcd)[..4].iter().sum::<f64>(), sextuple(fghi)[..4].iter().sum::<f64>());
            Ok(rel_err(pf, pa))
        }
        RelationKind::Similar => holds(similarity_scale(abcd, fghi).is_some(), "similar"),
        RelationKind::Congruent => match similarity_scale(abcd, fghi) {
            Some(k) => Ok((k - 1.0).abs()),
            None => Err(CaseStatus::Fail("not similar".into())),
        },
        RelationKind::CongruentCircumcircles | RelationKind::SameCircumcircle => {
            match (circumcircle(abcd), circumcircle(fghi)) {
                (Some(a), Some(f)) => {
                    let r = rel_err(f.radius, a.radius);
                    if relation == RelationKind::SameCircumcircle {
                        Ok(r.max(a.center.dist(f.center) / a.radius))
                    } else {
                        Ok(r)
                    }
                }
                _ => Err(CaseStatus::Fail("not concyclic".into())),
            }
        }
    }
}

fn probe_form(fghi: &[Point; 4], form: CentralForm) -> f64 {
    let s = sextuple(fghi);
    match form {
        CentralForm::Square => side_spread(fghi).max(rel_err(s[5], s[4])),
        CentralForm::Kite => {
            let pair = |i: usize, j: usize| rel_err(s[i], s[j]);
            pair(0, 1).max(pair(2, 3)).min(pair(1, 2).max(pair(3, 0)))
        }
    }
}

fn right_triangle(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    let t: f64 = rng.gen_range(0.15..std::f64::consts::FRAC_PI_2 - 0.15);
    (1.0, t.cos(), t.sin())
}

fn isosceles_triangle(rng: &mut ChaCha8Rng) -> (f64, f64, f64) {
    (rng.gen_range(0.35..1.85), 1.0, 1.0)
}

fn eval_at(def: &crate::centerdefs::CenterDef, (a, b, c): (f64, f64, f64)) -> Result<(f64, f64, f64), CaseStatus> {
    match eval_center(def, a, b, c) {
        Ok(p) => Ok((p.u, p.v, p.w)),
        Err(EvalError::AtInfinity) => Err(CaseStatus::Fail("at infinity".into())),
        Err(EvalError::Undefined) => Err(CaseStatus::Fail("undefined".into())),
    }
}

fn probe(case: &TheoremCase, reg: &CenterRegistry, seed: u64) -> Probe {
    let def = |i: u32| reg.get(i).ok_or(CaseStatus::Missing(i));
    let constant = |s: &str| parse_constant(s).map_err(|e| CaseStatus::Error(e.to_string()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match &case.check {
        Check::Relation { shape, radiator, center, relation, constant: k } => {
            let expected = k.as_deref().map(constant).transpose()?;
            let (abcd, fghi) = central_points(*shape, *radiator, def(*center)?, seed)?;
            probe_relation(&abcd, &fghi, *relation, expected)
        }
        Check::CentralShape { shape, radiator, center, form } => {
            let (_, fghi) = central_points(*shape, *radiator, def(*center)?, seed)?;
            Ok(probe_form(&fghi, *form))
        }
        Check::MutualCongruence { shape, radiator, centers } => {
            let (_, p) = central_points(*shape, *radiator, def(centers[0])?, seed)?;
            let (_, q) = central_points(*shape, *radiator, def(centers[1])?, seed)?;
            match similarity_scale(&p, &q) {
                Some(k) => Ok((k - 1.0).abs()),
                None => Err(CaseStatus::Fail("central quadrilaterals not similar".into())),
            }
        }
        Check::SquareRatio { center, constant: k } => {
            let expected = constant(k)?;
            match square_ratio(def(*center)?) {
                SquareOutcome::Ratio(r) | SquareOutcome::Limit(r) => Ok(rel_err(r.value, expected)),
                other => Err(CaseStatus::Fail(format!("{other:?}"))),
            }
        }
        Check::RightRatio { center, constant: k } => {
            let expected = constant(k)?;
            let (u, v, w) = eval_at(def(*center)?, right_triangle(&mut rng))?;
            Ok((v - w).abs().max(rel_err(1.0 / (1.0 - u).abs(), expected)))
        }
        Check::RightAtHypotenuseMidpoint { center } => {
            let (u, v, w) = eval_at(def(*center)?, right_triangle(&mut rng))?;
            Ok(u.abs().max((v - 0.5).abs()).max((w - 0.5).abs()))
        }
        Check::IsoscelesRatio { center, constant: k } => {
            let expected = constant(k)?;
            let (u, v, w) = eval_at(def(*center)?, isosceles_triangle(&mut rng))?;
            Ok((v - w).abs().max(rel_err(u / (u + 2.0 * v), expected)))
        }
        Check::IsoscelesPosition { center, position } => {
            let d = def(*center)?;
            let tri = isosceles_triangle(&mut rng);
            match position {
                IsoscelesPosition::Apex => {
                    let (u, v, w) = eval_at(d, tri)?;
                    Ok((u - 1.0).abs().max(v.abs()).max(w.abs()))
                }
                IsoscelesPosition::BaseMidpoint => {
                    let (u, v, w) = eval_at(d, tri)?;
                    Ok(u.abs().max((v - 0.5).abs()).max((w - 0.5).abs()))
                }
                IsoscelesPosition::Infinity => {
                    // On the line at infinity here, but not for a scalene triangle.
                    let scalene = (rng.gen_range(1.1..1.4), 1.0, rng.gen_range(0.6..0.9));
                    if matches!(eval_center(d, scalene.0, scalene.1, scalene.2), Err(EvalError::AtInfinity)) {
                        return Err(CaseStatus::Fail("at infinity for a scalene triangle".into()));
                    }
                    match eval_raw(d, tri.0, tri.1, tri.2) {
                        Ok(p) => Ok((p.u + p.v + p.w).abs() / (p.u.abs() + p.v.abs() + p.w.abs())),
                        Err(_) => Err(CaseStatus::Fail("undefined".into())),
                    }
                }
            }
        }
    }
}

/// Runs one case on each seed and keeps the worst residual.
pub fn run_case(case: &TheoremCase, reg: &CenterRegistry, seeds: &[u64]) -> CaseReport {
    let mut worst: f64 = 0.0;
    for &seed in seeds {
        match probe(case, reg, seed) {
            Ok(r) if r.is_finite() => worst = worst.max(r),
            Ok(r) => {
                return CaseReport { id: case.id.clone(), status: CaseStatus::Fail(format!("residual {r}")), worst_residual: r }
            }
            Err(status) => return CaseReport { id: case.id.clone(), status, worst_residual: f64::NAN },
        }
    }
    let status = if worst < case.tolerance {
        CaseStatus::Pass
    } else {
        CaseStatus::Fail(format!("residual {worst:.3e} above {:.0e}", case.tolerance))
    };
    CaseReport { id: case.id.clone(), status, worst_residual: worst }
}

/// Runs every case. Cases are independent, so they run in parallel when the
/// `parallel` feature is on. Reports keep manifest order.
pub fn run_all(cases: &[TheoremCase], reg: &CenterRegistry, seeds: &[u64]) -> Vec<CaseReport> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        cases.par_iter().map(|c| run_case(c, reg, seeds)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        cases.iter().map(|c| run_case(c, reg, seeds)).collect()
    }
}
