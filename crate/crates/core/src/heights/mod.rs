//! Root isolation, Mahler measure, Weil and canonical heights.

pub mod algebraic;
mod float;
pub mod point;
pub mod roots;

pub use algebraic::{
    is_cyclotomic_product, log_mahler_measure, mahler_measure, minpoly_cyc, norm_poly, weil_height,
    weil_height_cyc, AlgebraicNumber,
};
pub use point::{canonical_height, Coord, TorusPoint};
pub use roots::{complex_roots, numeric_roots, RootEnclosure};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

pub(crate) fn float_ratio(a: &BigInt, b: &BigInt) -> f64 {
    BigRational::new(a.clone(), b.clone())
        .to_f64()
        .unwrap_or(f64::NAN)
}

/// `log |x|` without overflowing for huge integers.
pub(crate) fn log_abs_big(x: &BigInt) -> f64 {
    let a = x.abs();
    match a.to_f64() {
        Some(f) if f.is_finite() => f.ln(),
        _ => {
            let bits = a.bits();
            let shift = bits.saturating_sub(60);
            (&a >> shift).to_f64().unwrap_or(1.0).ln() + shift as f64 * std::f64::consts::LN_2
        }
    }
}
