//! Central quadrilaterals of a convex quadrilateral.
//!
//! A point `E` (the radiator) joined to the vertices of `ABCD` splits the
//! plane into four radial triangles `EAB`, `EBC`, `ECD`, `EDA`. Placing the
//! same triangle center in each gives the central quadrilateral `FGHI`.
//! This crate generates quadrilaterals of 28 shape classes, constructs the
//! radiators, evaluates triangle centers from a formula registry, and
//! searches for relations between `ABCD` and `FGHI`.

pub mod barycentric;
pub mod centerdefs;
pub mod explorer;
pub mod geomcore;
pub mod quadgen;
pub mod radiators;
pub mod regression;
pub mod relations;
