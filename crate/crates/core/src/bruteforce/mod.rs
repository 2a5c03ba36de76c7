//! Exhaustive finite-geometry oracles.

pub mod cyclotomic;
pub mod epsi;
pub mod field;
pub mod flags;
pub mod gl3;
pub mod torus;
