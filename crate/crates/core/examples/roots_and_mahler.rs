//! Certified complex roots and Mahler measures of integer polynomials.

use toric_lab::exact::{cyclotomic_poly, factor_with_cap, IntPoly, DEFAULT_DEGREE_CAP};
use toric_lab::heights::{complex_roots, is_cyclotomic_product, mahler_measure};
use toric_lab::Result;

pub fn run_example() -> Result<()> {
    // Lehmer's polynomial: the smallest known Mahler measure above 1.
    let lehmer = IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
    println!("M(lehmer) = {:.15}", mahler_measure(&lehmer)?);
    for r in complex_roots(&lehmer, 1e-12)? {
        if r.center.norm() > 1.0 + 1e-9 || r.center.norm() < 1.0 - 1e-9 {
            println!("  off-circle root {:.12} (radius {:.1e})", r.center, r.radius);
        }
    }

    let phi = cyclotomic_poly(105)?;
    println!("Φ_105: degree {}, cyclotomic product: {}", phi.deg(), is_cyclotomic_product(&phi));
    println!("M(Φ_105) = {}", mahler_measure(&phi)?);

    // (x² − 2)(x³ − x − 1)² splits back into its factors.
    let a = IntPoly::from_i64s(&[-2, 0, 1]);
    let b = IntPoly::from_i64s(&[-1, -1, 0, 1]);
    let p = &(&a * &b) * &b;
    for (g, e) in factor_with_cap(&p, DEFAULT_DEGREE_CAP)? {
        println!("  factor {g} ^{e}, M = {:.12}", mahler_measure(&g)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
