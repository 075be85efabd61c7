//! Triangle-center definitions: a small formula language for the first
//! barycentric or trilinear coordinate, a registry keyed by Kimberling index,
//! evaluation by cyclic substitution, and coincidence classifiers.

pub mod classify;
pub mod expr;
pub mod registry;

pub use classify::{
    classify_isosceles_behavior, classify_right_triangle_ratio, IsoscelesBehavior, RightTriangleBehavior, CLASSIFY_SAMPLES, CLASSIFY_TOL,
};
pub use expr::{parse_expr, Env, Expr, ExprError};
pub use registry::{parse_center_file, CenterRegistry, ParseError, CENTER_FILE_ENV};

use crate::barycentric::{normalize, Bary, BaryError};
use thiserror::Error;

/// Coordinates smaller than this fraction of their magnitude bound are zero.
pub const CANCEL_EPS: f64 = 1e-12;

/// How the stored expression is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordKind {
    Barycentric,
    Trilinear,
}

/// One registered center.
#[derive(Debug, Clone, PartialEq)]
pub struct CenterDef {
    pub index: u32,
    pub kind: CoordKind,
    pub expr: Expr,
    pub name: Option<String>,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum EvalError {
    #[error("center lies on the line at infinity")]
    AtInfinity,
    #[error("center is undefined for this triangle")]
    Undefined,
}

/// Triangle variables shared by the three cyclic evaluations.
fn envs(a: f64, b: f64, c: f64) -> [Env; 3] {
    let mut s = [a, b, c];
    s.sort_by(|x, y| y.total_cmp(x));
    let (x, y, z) = (s[0], s[1], s[2]);
    // Stable Heron product with sides sorted in decreasing order.
    let prod = (x + (y + z)) * (z - (x - y)) * (z + (x - y)) * (x + (y - z));
    let twice_area = 0.5 * prod.max(0.0).sqrt();
    let angle = |opp: f64, s1: f64, s2: f64| ((s1 * s1 + s2 * s2 - opp * opp) / (2.0 * s1 * s2)).clamp(-1.0, 1.0).acos();
    let (aa, ab, ac) = (angle(a, b, c), angle(b, c, a), angle(c, a, b));
    let env = |a, b, c, aa, ab, ac| Env { a, b, c, s: twice_area, angle_a: aa, angle_b: ab, angle_c: ac };
    [env(a, b, c, aa, ab, ac), env(b, c, a, ab, ac, aa), env(c, a, b, ac, aa, ab)]
}

/// Raw homogeneous coordinates with cancellations snapped to zero.
pub fn eval_raw(def: &CenterDef, a: f64, b: f64, c: f64) -> Result<Bary, EvalError> {
    let sides = [a, b, c];
    let mut out = [0.0; 3];
    for (k, env) in envs(a, b, c).iter().enumerate() {
        let t = def.expr.eval(env);
        if !t.value.is_finite() || !t.magnitude.is_finite() {
            return Err(EvalError::Undefined);
        }
        let v = if t.value.abs() <= CANCEL_EPS * t.magnitude { 0.0 } else { t.value };
        out[k] = match def.kind {
            CoordKind::Barycentric => v,
            CoordKind::Trilinear => v * sides[k],
        };
    }
    if out.iter().all(|v| *v == 0.0) {
        return Err(EvalError::Undefined);
    }
    Ok(Bary::new(out[0], out[1], out[2]))
}

/// Normalized barycentric coordinates of the center of the triangle with
/// side lengths `a`, `b`, `c`.
pub fn eval_center(def: &CenterDef, a: f64, b: f64, c: f64) -> Result<Bary, EvalError> {
    let raw = eval_raw(def, a, b, c)?;
    match normalize(raw) {
        Ok(n) => Ok(n),
        Err(BaryError::AtInfinity) => Err(EvalError::AtInfinity),
        Err(_) => Err(EvalError::Undefined),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn def(kind: CoordKind, src: &str) -> CenterDef {
        CenterDef { index: 0, kind, expr: parse_expr(src).unwrap(), name: None }
    }

    #[test]
    fn centroid_everywhere() {
        let g = eval_center(&def(CoordKind::Barycentric, "1"), 3.0, 4.0, 5.0).unwrap();
        for x in [g.u, g.v, g.w] {
            assert!((x - 1.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn nine_point_center_on_right_triangle() {
        let x5 = def(CoordKind::Barycentric, "a^2*(b^2+c^2) - (b^2-c^2)^2");
        let p = eval_center(&x5, 5.0, 4.0, 3.0).unwrap();
        assert!((p.u - 0.5).abs() < 1e-14 && (p.v - 0.25).abs() < 1e-14 && (p.w - 0.25).abs() < 1e-14);
    }

    #[test]
    fn trilinear_incenter_is_abc() {
        let p = eval_center(&def(CoordKind::Trilinear, "1"), 3.0, 4.0, 5.0).unwrap();
        assert!((p.u - 0.25).abs() < 1e-15 && (p.w - 5.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn heron_and_angles() {
        let e = envs(3.0, 4.0, 5.0);
        assert!((e[0].s - 12.0).abs() < 1e-12);
        assert!((e[0].angle_c - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        // Cyclic rotation moves angle B into the A slot.
        assert_eq!(e[1].angle_a, e[0].angle_b);
        assert_eq!(e[1].a, 4.0);
    }

    #[test]
    fn infinity_and_undefined() {
        let x523 = def(CoordKind::Barycentric, "b^2 - c^2");
        assert_eq!(eval_center(&x523, 3.0, 4.0, 5.0), Err(EvalError::AtInfinity));
        let vanishing = def(CoordKind::Barycentric, "(b-c)*(c-a)*(a-b)");
        assert_eq!(eval_center(&vanishing, 3.0, 4.0, 4.0), Err(EvalError::Undefined));
    }
}
