//! Approaching arrangements of polygonal curves, their allowable sequences,
//! and exact LP-based realizability checks.

pub mod arrgeom;
pub mod duality;
pub mod dynamics;
pub mod error;
pub mod extend;
pub mod generators;
pub mod lp;
pub mod rational;
pub mod seq;

pub use error::{Error, Result};
pub use rational::Rational;
