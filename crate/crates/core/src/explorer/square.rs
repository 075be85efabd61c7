//! Closed-form area ratio for a square with radiator at its center.
//!
//! Each radial triangle of a square about its center is a right isosceles
//! triangle with sides `(√2, 1, 1)`. A center at normalized coordinates
//! `(u, v, v)` lies on the axis from the apex `E` to the base midpoint `M`
//! with `XM/EM = k = u/(u+2v)`. The central quadrilateral is then the
//! midpoint square scaled by `1-k` about `E`, so `[ABCD]/[FGHI] = 2/(1-k)^2`.

use crate::centerdefs::{eval_center, CenterDef, CenterRegistry, EvalError};
use crate::relations::{recognize_constant, RecognitionMode, RecognizedConstant};
use std::collections::BTreeMap;

/// Tolerance below which `EF/EM` counts as zero.
const DEGENERATE_TOL: f64 = 1e-9;

/// Half-width of the apex-angle step used for limits.
const LIMIT_STEP: f64 = 1e-4;
/// Relative agreement required between one-sided limits.
const LIMIT_TOL: f64 = 1e-6;

/// Outcome of the square-ratio computation for one center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SquareOutcome {
    Ratio(RecognizedConstant),
    /// The center is `0:0:0` on the right isosceles triangle; the ratio is
    /// the limit over nearby isosceles triangles.
    Limit(RecognizedConstant),
    /// The center sits at the apex, so `FGHI` collapses to a point.
    Degenerate,
    AtInfinity,
    Undefined,
}

/// `1 - k` for the isosceles triangle with legs 1 and apex angle `theta`.
fn one_minus_k(def: &CenterDef, theta: f64) -> Result<f64, SquareOutcome> {
    let base = 2.0 * (theta / 2.0).sin();
    let p = match eval_center(def, base, 1.0, 1.0) {
        Ok(p) => p,
        Err(EvalError::AtInfinity) => return Err(SquareOutcome::AtInfinity),
        Err(EvalError::Undefined) => return Err(SquareOutcome::Undefined),
    };
    let denom = p.u + 2.0 * p.v;
    if denom.abs() < DEGENERATE_TOL {
        return Err(SquareOutcome::AtInfinity);
    }
    Ok(1.0 - p.u / denom)
}

fn ratio_from(one_minus_k: f64) -> Option<f64> {
    (one_minus_k.abs() >= DEGENERATE_TOL).then(|| 2.0 / (one_minus_k * one_minus_k))
}

/// Two-sided limit of `1 - k` at a right apex, by Richardson extrapolation
/// from each side. Fails unless both sides agree.
fn limit_one_minus_k(def: &CenterDef) -> Option<f64> {
    let right = std::f64::consts::FRAC_PI_2;
    let g = |d: f64| one_minus_k(def, right + d).ok();
    let h = LIMIT_STEP;
    let upper = 2.0 * g(h)? - g(2.0 * h)?;
    let lower = 2.0 * g(-h)? - g(-2.0 * h)?;
    let scale = upper.abs().max(lower.abs()).max(1e-300);
    ((upper - lower).abs() <= LIMIT_TOL * scale.max(1.0)).then_some(0.5 * (upper + lower))
}

/// `[ABCD]/[FGHI]` for a square with radiator at its center.
pub fn square_ratio(def: &CenterDef) -> SquareOutcome {
    match one_minus_k(def, std::f64::consts::FRAC_PI_2) {
        Ok(x) => match ratio_from(x) {
            Some(r) => SquareOutcome::Ratio(recognize_constant(r, RecognitionMode::Extended)),
            None => SquareOutcome::Degenerate,
        },
        Err(SquareOutcome::Undefined) => match limit_one_minus_k(def) {
            Some(x) => match ratio_from(x) {
                Some(r) => SquareOutcome::Limit(recognize_constant(r, RecognitionMode::Extended)),
                None => SquareOutcome::Degenerate,
            },
            None => SquareOutcome::Undefined,
        },
        Err(e) => e,
    }
}

/// Ratios for the requested centers, omitting degenerate and infinite ones.
/// Centers missing from the registry are skipped.
pub fn square_ratio_table(reg: &CenterRegistry, centers: &[u32]) -> BTreeMap<u32, RecognizedConstant> {
    centers
        .iter()
        .filter_map(|&i| reg.get(i).map(|d| (i, square_ratio(d))))
        .filter_map(|(i, o)| match o {
            SquareOutcome::Ratio(r) | SquareOutcome::Limit(r) => Some((i, r)),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centerdefs::parse_center_file;
    use crate::relations::ConstantForm;

    fn one(src: &str) -> CenterDef {
        parse_center_file(&format!("1 = {src}\n")).unwrap().get(1).unwrap().clone()
    }

    #[test]
    fn removable_singularity_uses_limit() {
        // Circumcenter of the inward square centers is 0:0:0 on the right
        // isosceles triangle but tends to k = 1/2 nearby.
        let x = one("bary : 2*a^4 + b^4 + c^4 - 3*a^2*b^2 - 3*a^2*c^2 - 2*b^2*c^2 + 2*S*(b^2 + c^2)");
        match square_ratio(&x) {
            SquareOutcome::Limit(r) => assert_eq!(r.form, ConstantForm::Rational { p: 8, q: 1 }),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn centroid_gives_nine_halves() {
        // k = 1/3 so 2/(2/3)^2 = 9/2.
        match square_ratio(&one("bary : 1")) {
            SquareOutcome::Ratio(r) => assert_eq!(r.form, ConstantForm::Rational { p: 9, q: 2 }),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn orthocenter_at_right_angle_is_degenerate() {
        let h = one("bary : (a^2 + b^2 - c^2) * (a^2 - b^2 + c^2)");
        assert_eq!(square_ratio(&h), SquareOutcome::Degenerate);
    }
}
