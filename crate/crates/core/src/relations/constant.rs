//! Recognition of measured constants as small rationals `p/q` or quadratic
//! irrationals `(p + q*sqrt(d))/r`.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Acceptance tolerance for a recognized value.
pub const RECOGNIZE_TOL: f64 = 1e-7;
/// Largest denominator in rational mode.
pub const RATIONAL_MAX_DEN: i64 = 5;
/// Largest rational denominator in extended mode.
pub const EXTENDED_RATIONAL_MAX_DEN: i64 = 64;
/// Largest `r` in `(p + q*sqrt(d))/r`.
pub const SURD_MAX_DEN: i64 = 36;
/// Bound on `|p|` and `|q|` in `(p + q*sqrt(d))/r`.
pub const SURD_MAX_COEF: i64 = 1200;
/// Radicands searched in extended mode.
pub const SURD_RADICANDS: [i64; 2] = [2, 3];

/// Which constant forms are searched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum RecognitionMode {
    /// Rationals with denominator at most 5.
    #[default]
    Rational,
    /// Rationals with denominator at most 64 and quadratic irrationals.
    Extended,
}

/// Exact form of a recognized constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstantForm {
    Rational { p: i64, q: i64 },
    /// `(p + q*sqrt(d)) / r`.
    QuadIrrational { p: i64, q: i64, d: i64, r: i64 },
    Unrecognized,
}

/// A measured value with its recognized form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecognizedConstant {
    pub form: ConstantForm,
    pub value: f64,
    pub residual: f64,
}

impl ConstantForm {
    /// Exact value of the form, if any.
    pub fn value(&self) -> Option<f64> {
        match *self {
            ConstantForm::Rational { p, q } => Some(p as f64 / q as f64),
            ConstantForm::QuadIrrational { p, q, d, r } => Some((p as f64 + q as f64 * (d as f64).sqrt()) / r as f64),
            ConstantForm::Unrecognized => None,
        }
    }

    pub fn is_recognized(&self) -> bool {
        !matches!(self, ConstantForm::Unrecognized)
    }
}

impl fmt::Display for ConstantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ConstantForm::Rational { p, q: 1 } => write!(f, "{p}"),
            ConstantForm::Rational { p, q } => write!(f, "{p}/{q}"),
            ConstantForm::QuadIrrational { p, q, d, r } => {
                let surd = match q {
                    1 => format!("√{d}"),
                    -1 => format!("-√{d}"),
                    _ => format!("{q}√{d}"),
                };
                let num = match (p, q.signum()) {
                    (0, _) => surd,
                    (_, 1) => format!("{p}+{surd}"),
                    _ => format!("{p}{surd}"),
                };
                if r == 1 {
                    write!(f, "{num}")
                } else if p == 0 {
                    write!(f, "{num}/{r}")
                } else {
                    write!(f, "({num})/{r}")
                }
            }
            ConstantForm::Unrecognized => write!(f, "?"),
        }
    }
}

impl fmt::Display for RecognizedConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.form {
            ConstantForm::Unrecognized => write!(f, "{:.12}", self.value),
            form => write!(f, "{form}"),
        }
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Best rational with denominator at most `max_den`.
pub fn recognize_rational(x: f64, max_den: i64) -> Option<RecognizedConstant> {
    if !x.is_finite() {
        return None;
    }
    for q in 1..=max_den {
        let p = (x * q as f64).round();
        let residual = (x - p / q as f64).abs();
        if residual < RECOGNIZE_TOL && p.abs() < 1e15 {
            let p = p as i64;
            if gcd(p, q) != 1 {
                continue;
            }
            return Some(RecognizedConstant { form: ConstantForm::Rational { p, q }, value: x, residual });
        }
    }
    None
}

fn recognize_surd(x: f64) -> Option<RecognizedConstant> {
    for r in 1..=SURD_MAX_DEN {
        let xr = x * r as f64;
        for qa in 1..=SURD_MAX_COEF {
            for q in [qa, -qa] {
                for d in SURD_RADICANDS {
                    let qs = q as f64 * (d as f64).sqrt();
                    let p = (xr - qs).round();
                    if p.abs() > SURD_MAX_COEF as f64 {
                        continue;
                    }
                    let residual = (x - (p + qs) / r as f64).abs();
                    if residual < RECOGNIZE_TOL {
                        let p = p as i64;
                        if gcd(gcd(p, q), r) != 1 {
                            continue;
                        }
                        let form = ConstantForm::QuadIrrational { p, q, d, r };
                        return Some(RecognizedConstant { form, value: x, residual });
                    }
                }
            }
        }
    }
    None
}

/// Classifies `x` in the given mode.
pub fn recognize_constant(x: f64, mode: RecognitionMode) -> RecognizedConstant {
    let found = match mode {
        RecognitionMode::Rational => recognize_rational(x, RATIONAL_MAX_DEN),
        RecognitionMode::Extended => recognize_rational(x, EXTENDED_RATIONAL_MAX_DEN).or_else(|| recognize_surd(x)),
    };
    found.unwrap_or(RecognizedConstant { form: ConstantForm::Unrecognized, value: x, residual: f64::NAN })
}
