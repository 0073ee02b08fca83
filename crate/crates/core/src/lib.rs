//! Qualitative analysis of the planar SIS epidemic system
//!
//! ```text
//! x' = -b x y - m x + c y + m k
//! y' =  b x y - (m + c) y
//! ```
//!
//! The symbolic side (steady states, local types, charts at infinity,
//! invariant lines, portrait class) is computed in exact rational
//! arithmetic; the portrait side integrates orbits numerically on the
//! Poincaré disc and renders them as SVG.

pub mod classify;
pub mod cli;
pub mod compactify;
pub mod error;
pub mod field;
pub mod invariants;
pub mod poly;
pub mod portrait;
pub mod rational;
pub mod serde_util;
pub mod sis;
pub mod upoly;

pub use classify::{classify_point, Classification, Kind};
pub use error::{Error, Result};
pub use field::{make_sis_field, Matrix2, SisParams, VectorField};
pub use poly::Poly2;
pub use rational::Rational;
pub use sis::{full_report, PortraitClass, PortraitReport};
