//! Monte Carlo samples of the equilibrium measure of a curve, compared with
//! Haar measure mode by mode.

use toric_lab::equidist::{discrepancy_report, equilibrium_components, equilibrium_sample, radial_defect, weyl_sum, Haar};
use toric_lab::geometry::LaurentHypersurface;
use toric_lab::Result;

pub fn run_example() -> Result<()> {
    let n = 20_000;
    for s in ["y - x", "x + y - 1", "x^2*y + y^2 + x - 3"] {
        let f: LaurentHypersurface = s.parse()?;
        let comps = equilibrium_components(&f)?;
        let sample = equilibrium_sample(&f, n, 7)?;
        let rep = discrepancy_report(&sample, &Haar { n: 2 }, 3)?;
        println!("{s}: components {comps:?}");
        println!(
            "  {} points ({}), radial defect {:.3e}, sup_k |W_k| = {:.4} at {:?}",
            sample.len(),
            sample.provenance(),
            radial_defect(&sample),
            rep.sup,
            rep.argmax
        );
        let w = weyl_sum(&sample, &[1, -1]);
        println!("  W_(1,-1) = {:+.4} {:+.4}i", w.re, w.im);
    }

    // Same seed, same sample, whatever the thread count.
    let f: LaurentHypersurface = "x + y - 1".parse()?;
    let a = equilibrium_sample(&f, 1000, 3)?;
    let b = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("thread pool")
        .install(|| equilibrium_sample(&f, 1000, 3))?;
    println!("reproducible across thread counts: {}", a.to_text() == b.to_text());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
