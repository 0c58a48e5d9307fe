//! Exact heights, Galois orbits, stabilizer lattices and equidistribution
//! experiments on algebraic tori 𝐆ₘⁿ.

pub mod bogomolov;
pub mod equidist;
pub mod error;
pub mod exact;
pub mod experiment;
pub mod geometry;
pub mod heights;

pub use error::{Error, Result};
