//! The 28 quadrilateral shape classes.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

macro_rules! shapes {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// A family of convex quadrilaterals defined by an algebraic condition.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub enum ShapeClass {
            $(#[serde(rename = $name)] $variant,)*
        }

        impl ShapeClass {
            /// Every class in declaration order.
            pub const ALL: &'static [ShapeClass] = &[$(ShapeClass::$variant,)*];

            /// Canonical camelCase name.
            pub fn name(self) -> &'static str {
                match self {
                    $(ShapeClass::$variant => $name,)*
                }
            }
        }
    };
}

shapes! {
    General => "general",
    Cyclic => "cyclic",
    Tangential => "tangential",
    Extangential => "extangential",
    Parallelogram => "parallelogram",
    EqualProdOpp => "equalProdOpp",
    EqualProdAdj => "equalProdAdj",
    Orthodiagonal => "orthodiagonal",
    Equidiagonal => "equidiagonal",
    Pythagorean => "Pythagorean",
    Kite => "kite",
    Trapezoid => "trapezoid",
    Rhombus => "rhombus",
    Rectangle => "rectangle",
    Hjelmslev => "Hjelmslev",
    IsoscelesTrapezoid => "isoscelesTrapezoid",
    ApQuad => "APquad",
    Bicentric => "bicentric",
    Exbicentric => "exbicentric",
    BicentricTrapezoid => "bicentricTrapezoid",
    CyclicOrthodiagonal => "cyclicOrthodiagonal",
    EquidiagonalKite => "equidiagonalKite",
    EquidiagonalOrthodiagonal => "equidiagonalOrthodiagonal",
    EquidiagonalOrthodiagonalTrapezoid => "equidiagonalOrthodiagonalTrapezoid",
    Harmonic => "harmonic",
    OrthodiagonalTrapezoid => "orthodiagonalTrapezoid",
    TangentialTrapezoid => "tangentialTrapezoid",
    Square => "square",
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown shape class '{0}'")]
pub struct UnknownShape(pub String);

impl FromStr for ShapeClass {
    type Err = UnknownShape;

    /// Case-insensitive match on the canonical name.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ShapeClass::ALL
            .iter()
            .copied()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| UnknownShape(s.to_string()))
    }
}
