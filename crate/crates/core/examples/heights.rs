//! Weil heights of rationals, quadratic irrationals and cyclotomic
//! elements, and the canonical height of points on the torus.
//!
//! ```text
//! cargo run --example heights
//! ```

use num_complex::Complex64;
use toric_lab::exact::{CycElement, IntPoly};
use toric_lab::heights::{canonical_height, weil_height, weil_height_cyc, AlgebraicNumber, TorusPoint};
use toric_lab::Result;

pub fn run_example() -> Result<()> {
    for r in ["3/2", "-7", "10/9"] {
        let c: CycElement = r.parse()?;
        println!("h({r:>5}) = {:.12}", weil_height_cyc(&c)?);
    }

    // The golden ratio as the root of x² − x − 1 near 1.618.
    let golden = AlgebraicNumber::from_minpoly(&IntPoly::from_i64s(&[-1, -1, 1]), Complex64::new(1.6, 0.0))?;
    println!("h(golden) = {:.12}", weil_height(&golden)?);
    println!("h(golden^3) = {:.12}", weil_height(&golden.pow(3)?)?);

    let one = CycElement::one();
    for m in [5, 12, 41] {
        let b = &one + &CycElement::root_of_unity(m, 1)?;
        println!("h(1 + zeta({m})) = {:.12}", weil_height_cyc(&b)?);
    }

    for p in ["(2, 1/2)", "(zeta(5), zeta(5)^2)", "(3/2, -1, zeta(12)^5)"] {
        let pt: TorusPoint = p.parse()?;
        println!("ĥ{pt} = {:.12}", canonical_height(&pt)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
