//! Exact arithmetic substrate: integer polynomials, cyclotomic fields,
//! integer matrices and factorization over ℚ.

pub mod cyclotomic;
pub mod factor;
pub mod matrix;
pub mod poly;

pub use cyclotomic::{cyc_reduce, cyclotomic_poly, euler_phi, mobius, units_mod, CycElement};
pub use factor::{factor_squarefree_rational, factor_with_cap, DEFAULT_DEGREE_CAP};
pub use matrix::{smith_normal_form, IntMatrix};
pub use poly::IntPoly;
