//! Galois orbits of torsion points and their Weyl sums. The orbit of a
//! primitive m-th root of unity reproduces the Ramanujan sums; an orbit on
//! a subtorus has a mode pinned at 1.

use toric_lab::equidist::{discrepancy_report, galois_orbit, radial_defect, weyl_sum, Haar};
use toric_lab::exact::{euler_phi, mobius};
use toric_lab::heights::TorusPoint;
use toric_lab::Result;

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub fn run_example() -> Result<()> {
    let m = 36;
    let orbit = galois_orbit(&format!("(zeta({m}))").parse::<TorusPoint>()?)?;
    println!("orbit of zeta({m}): {} points, radial defect {}", orbit.len(), radial_defect(&orbit));
    for k in [1, 2, 3, 4, 6, 9, 12, 18] {
        let w = weyl_sum(&orbit, &[k]);
        let d = m / gcd(k as usize, m);
        let ramanujan = mobius(d) as f64 / euler_phi(d) as f64;
        println!("  k={k:>2}  W={:+.12}  μ/φ={:+.12}", w.re, ramanujan);
    }

    for p in ["(zeta(101), zeta(101)^7)", "(zeta(5), zeta(5)^2)"] {
        let s = galois_orbit(&p.parse::<TorusPoint>()?)?;
        let rep = discrepancy_report(&s, &Haar { n: 2 }, 10)?;
        println!("{p}: {} points, sup |W_k| = {:.6} at {:?}", s.len(), rep.sup, rep.argmax);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
