//! Torsion points on curves, small-height sections, and a uniform scan over
//! the line family `a·x + b·y − 1`.

use toric_lab::bogomolov::{small_point_scan, torsion_points_on_curve, uniform_scan, CorpusSpec, TorsionPoints};
use toric_lab::exact::CycElement;
use toric_lab::geometry::{LaurentHypersurface, SupportFamily};
use toric_lab::Result;

pub fn run_example() -> Result<()> {
    for s in ["x + y - 1", "x + y + 1", "x*y + x + y", "x*y - 1"] {
        let f: LaurentHypersurface = s.parse()?;
        match torsion_points_on_curve(&f, 60)? {
            TorsionPoints::Points(p) => {
                let shown: Vec<String> = p.iter().map(|q| q.to_string()).collect();
                println!("{s}: {} torsion points {}", p.len(), shown.join(" "));
            }
            TorsionPoints::CosetDetected => println!("{s}: a torsion coset, infinitely many"),
        }
    }

    let line: LaurentHypersurface = "x + y - 1".parse()?;
    let corpus = CorpusSpec { max_num: 4, max_den: 4, max_root_order: 12, torsion_order: 30 };
    let out = small_point_scan(&line, &corpus, 1.0)?;
    println!("x + y - 1, ĥ ≤ 1: {} points", out.records.len());
    for r in out.records.iter().take(8) {
        println!("  {:<28} ĥ = {:.6}  {:?}", r.point.to_string(), r.height, r.source);
    }

    let fam: SupportFamily = "?*x + ?*y - 1".parse()?;
    let members: Vec<Vec<CycElement>> = [("1", "1"), ("2", "3"), ("1", "-1"), ("zeta(3)", "1"), ("1/2", "5")]
        .iter()
        .map(|(a, b)| Ok(vec![a.parse()?, b.parse()?]))
        .collect::<Result<_>>()?;
    for r in uniform_scan(&fam, &members, &[0.05, 0.5], &CorpusSpec::default())? {
        let counts: Vec<String> = r.counts.iter().map(|c| format!("ĥ≤{}: {} ({} non-torsion)", c.threshold, c.count, c.nontorsion)).collect();
        println!("member {} {}: torsion {} | {}", r.member, r.curve.as_deref().unwrap_or("-"), r.torsion_count, counts.join(", "));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
