//! Central quadrilaterals and the relations detected between a reference
//! quadrilateral and its central quadrilateral.

pub mod constant;

pub use constant::{recognize_constant, recognize_rational, ConstantForm, RecognitionMode, RecognizedConstant};

use crate::barycentric::{bary_to_cartesian, RefTriangle};
use crate::centerdefs::{eval_center, CenterDef, EvalError};
use crate::geomcore::{circle_through, diameter, shoelace_area, Circle, Point};
use crate::quadgen::QuadInstance;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Relative tolerance for side, perimeter and circle comparisons.
pub const RELATION_TOL: f64 = 1e-7;
/// `|[FGHI]|` below this multiple of the squared diameter is degenerate.
pub const AREA_EPS: f64 = 1e-12;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum CentralError {
    #[error("a center lies at infinity")]
    SkippedInfinity,
    #[error("a center is undefined")]
    Undefined,
}

/// The centers `F, G, H, I` of triangles `EAB, EBC, ECD, EDA`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralQuad {
    pub points: [Point; 4],
}

/// Places the center `def` in each radial triangle of `q` about `e`.
pub fn central_quadrilateral(q: &QuadInstance, e: Point, def: &CenterDef) -> Result<CentralQuad, CentralError> {
    let v = &q.vertices;
    let mut points = [Point::default(); 4];
    for i in 0..4 {
        let t = RefTriangle::new(e, v[i], v[(i + 1) % 4]);
        let bc = eval_center(def, t.a, t.b, t.c).map_err(|err| match err {
            EvalError::AtInfinity => CentralError::SkippedInfinity,
            EvalError::Undefined => CentralError::Undefined,
        })?;
        points[i] = bary_to_cartesian(&t, bc);
    }
    Ok(CentralQuad { points })
}

/// Triangle-sum signed area `[PQR] + [RSP]`.
pub fn signed_area_quad(pts: &[Point; 4]) -> f64 {
    shoelace_area(pts)
}

/// Kinds of relation checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum RelationKind {
    AreaRatio,
    SameArea,
    Congruent,
    Similar,
    SamePerimeter,
    CongruentCircumcircles,
    SameCircumcircle,
}

impl RelationKind {
    pub const ALL: &'static [RelationKind] = &[
        RelationKind::AreaRatio,
        RelationKind::SameArea,
        RelationKind::Congruent,
        RelationKind::Similar,
        RelationKind::SamePerimeter,
        RelationKind::CongruentCircumcircles,
        RelationKind::SameCircumcircle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationKind::AreaRatio => "areaRatio",
            RelationKind::SameArea => "sameArea",
            RelationKind::Congruent => "congruent",
            RelationKind::Similar => "similar",
            RelationKind::SamePerimeter => "samePerimeter",
            RelationKind::CongruentCircumcircles => "congruentCircumcircles",
            RelationKind::SameCircumcircle => "sameCircumcircle",
        }
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A detected relation. Area ratios carry their constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Relation {
    AreaRatio(RecognizedConstant),
    SameArea,
    Congruent,
    Similar,
    SamePerimeter,
    CongruentCircumcircles,
    SameCircumcircle,
}

impl Relation {
    pub fn kind(&self) -> RelationKind {
        match self {
            Relation::AreaRatio(_) => RelationKind::AreaRatio,
            Relation::SameArea => RelationKind::SameArea,
            Relation::Congruent => RelationKind::Congruent,
            Relation::Similar => RelationKind::Similar,
            Relation::SamePerimeter => RelationKind::SamePerimeter,
            Relation::CongruentCircumcircles => RelationKind::CongruentCircumcircles,
            Relation::SameCircumcircle => RelationKind::SameCircumcircle,
        }
    }
}

/// Raw per-instance quantities from which relations are decided.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurements {
    /// `|[ABCD]| / |[FGHI]|`, absent when `FGHI` is degenerate.
    pub area_ratio: Option<f64>,
    pub congruent: bool,
    pub similar: bool,
    pub same_perimeter: bool,
    pub congruent_circumcircles: bool,
    pub same_circumcircle: bool,
}

/// Sides then diagonals: `[|P0P1|, |P1P2|, |P2P3|, |P3P0|, |P0P2|, |P1P3|]`.
pub fn sextuple(p: &[Point; 4]) -> [f64; 6] {
    [p[0].dist(p[1]), p[1].dist(p[2]), p[2].dist(p[3]), p[3].dist(p[0]), p[0].dist(p[2]), p[1].dist(p[3])]
}

/// The eight relabelings of a quadrilateral by rotation and reflection.
pub fn dihedral_orders(p: &[Point; 4]) -> [[Point; 4]; 8] {
    std::array::from_fn(|k| {
        let (rot, flip) = (k % 4, k >= 4);
        std::array::from_fn(|i| if flip { p[(rot + 4 - i) % 4] } else { p[(rot + i) % 4] })
    })
}

/// Common scale factor `FGHI/ABCD` under some relabeling, if one exists.
pub fn similarity_scale(abcd: &[Point; 4], fghi: &[Point; 4]) -> Option<f64> {
    let x = sextuple(abcd);
    dihedral_orders(fghi).iter().find_map(|order| {
        let y = sextuple(order);
        let k = y[0] / x[0];
        if !(k > 0.0) || !k.is_finite() {
            return None;
        }
        y.iter().zip(x.iter()).all(|(yi, xi)| (yi - k * xi).abs() <= RELATION_TOL * k * xi).then_some(k)
    })
}

/// Circle through all four points, if they are concyclic.
pub fn circumcircle(p: &[Point; 4]) -> Option<Circle> {
    let diam = diameter(p);
    let c = circle_through(p[0], p[1], p[2]).ok()?;
    (c.residual(p[3]) < RELATION_TOL * diam).then_some(c)
}

/// Measures one reference and central quadrilateral pair.
pub fn measure(q: &QuadInstance, c: &CentralQuad) -> Measurements {
    let abcd = &q.vertices;
    let fghi = &c.points;
    let diam = q.diameter();
    let big = signed_area_quad(abcd).abs();
    let small = signed_area_quad(fghi).abs();
    let area_ratio = (small >= AREA_EPS * diam * diam).then(|| big / small);
    let scale = similarity_scale(abcd, fghi);
    let congruent = scale.is_some_and(|k| (k - 1.0).abs() <= RELATION_TOL);
    let (pa, pf) = (q.perimeter(), sextuple(fghi)[..4].iter().sum::<f64>());
    let same_perimeter = (pa - pf).abs() <= RELATION_TOL * pa;
    let (mut congruent_circumcircles, mut same_circumcircle) = (false, false);
    if let (Some(ca), Some(cf)) = (circumcircle(abcd), circumcircle(fghi)) {
        congruent_circumcircles = (ca.radius - cf.radius).abs() <= RELATION_TOL * ca.radius;
        same_circumcircle = congruent_circumcircles && ca.center.dist(cf.center) <= RELATION_TOL * diam;
    }
    Measurements {
        area_ratio,
        congruent,
        similar: scale.is_some() && !congruent,
        same_perimeter,
        congruent_circumcircles,
        same_circumcircle,
    }
}

/// Relations between `q` and its central quadrilateral `c` on one instance.
/// Congruence is reported in place of similarity, and an area ratio of 1
/// as equal area.
pub fn detect_relations(q: &QuadInstance, c: &CentralQuad, mode: RecognitionMode) -> Vec<Relation> {
    let m = measure(q, c);
    let mut out = Vec::new();
    if let Some(k) = m.area_ratio {
        let rc = recognize_constant(k, mode);
        match rc.form {
            ConstantForm::Rational { p: 1, q: 1 } => out.push(Relation::SameArea),
            ConstantForm::Unrecognized => {}
            _ => out.push(Relation::AreaRatio(rc)),
        }
    }
    if m.congruent {
        out.push(Relation::Congruent);
    }
    if m.similar {
        out.push(Relation::Similar);
    }
    if m.same_perimeter {
        out.push(Relation::SamePerimeter);
    }
    if m.congruent_circumcircles {
        out.push(Relation::CongruentCircumcircles);
    }
    if m.same_circumcircle {
        out.push(Relation::SameCircumcircle);
    }
    out
}

/// Largest relative spread among the four side lengths.
pub fn side_spread(p: &[Point; 4]) -> f64 {
    let s = &sextuple(p)[..4];
    let hi = s.iter().cloned().fold(0.0, f64::max);
    let lo = s.iter().cloned().fold(f64::INFINITY, f64::min);
    (hi - lo) / hi
}

/// Four equal sides and equal diagonals, each within `tol` relative.
pub fn is_square(p: &[Point; 4], tol: f64) -> bool {
    let s = sextuple(p);
    side_spread(p) < tol && (s[4] - s[5]).abs() < tol * s[4]
}

/// Two pairs of equal adjacent sides (and not a rhombus-degenerate check).
pub fn is_kite(p: &[Point; 4], tol: f64) -> bool {
    let s = sextuple(p);
    let eq = |x: f64, y: f64| (x - y).abs() < tol * x.max(y);
    (eq(s[0], s[1]) && eq(s[2], s[3])) || (eq(s[1], s[2]) && eq(s[3], s[0]))
}
