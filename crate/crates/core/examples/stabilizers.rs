//! Stabilizers of curves from the Smith normal form of the support
//! differences, with coset and generation tests.

use toric_lab::exact::matrix::invariant_factors;
use toric_lab::exact::IntMatrix;
use toric_lab::geometry::{generates_ambient, stabilizer, torsion_coset_test, LaurentHypersurface};
use toric_lab::Result;

pub fn run_example() -> Result<()> {
    let d = invariant_factors(&IntMatrix::from_rows(2, &[vec![2, 0], vec![0, 6], vec![4, 6]]));
    println!("invariant factors of [[2,0],[0,6],[4,6]]: {d:?}");

    for s in ["x + y - 1", "x*y - 1", "x^2 - y^2", "x^2*y^3 - 5", "x^4*y^2 + x^2 + 1"] {
        let f: LaurentHypersurface = s.parse()?;
        let st = stabilizer(&f);
        println!(
            "{s:<18} dim {}  torsion {:?}  |Stab ∩ μ_12²| = {:<4} coset {:?}  generates {:?}",
            st.dim,
            st.torsion_invariants,
            st.count_in_mu(12),
            torsion_coset_test(&f),
            generates_ambient(&f),
        );
        for g in &st.torsion_generators {
            println!("    generator of order {}: exponents {:?}", g.order, g.exponents);
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
