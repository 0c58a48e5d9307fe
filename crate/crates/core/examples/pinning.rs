//! Pinning points for a coefficient family: which exact points cut the
//! parameter space down to a single member.

use toric_lab::geometry::{nondegenerate_power, pinning_points, SupportFamily};
use toric_lab::heights::TorusPoint;
use toric_lab::Result;

pub fn run_example() -> Result<()> {
    let fam: SupportFamily = "?*x + ?*y - 1".parse()?;
    for corpus in [vec!["(1, 1)", "(1, 2)"], vec!["(1, 1)", "(2, 2)"], vec!["(1, 1)", "(2, 2)", "(3, 1/2)"]] {
        let pts: Vec<TorusPoint> = corpus.iter().map(|p| p.parse()).collect::<Result<_>>()?;
        let cert = pinning_points(&fam, &pts)?;
        let sol = cert.solution.as_ref().map(|s| s.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        println!(
            "{corpus:?}: rank {}, fiber dim {}, member {:?}, u=1 {}, u=2 {}",
            cert.residual_rank,
            cert.fiber_dim,
            sol,
            nondegenerate_power(&fam, 1, &pts)?,
            nondegenerate_power(&fam, 2, &pts)?,
        );
    }

    // On (1, 1), (1, −1) and (2, 1) the last two parameters only enter as
    // b + c, so the third point adds nothing and (1, 2) is needed.
    let doc = "x^2 + ?*x*y + ?*y^2 + ?";
    let fam: SupportFamily = doc.parse()?;
    let pts: Vec<TorusPoint> = ["(1, 1)", "(1, -1)", "(2, 1)", "(1, 2)"].iter().map(|p| p.parse()).collect::<Result<_>>()?;
    let cert = pinning_points(&fam, &pts)?;
    let chosen: Vec<String> = cert.points.iter().map(|p| p.to_string()).collect();
    println!("{doc}: pinned by {}, fiber dim {}", chosen.join(" "), cert.fiber_dim);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
