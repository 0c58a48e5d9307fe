//! Acceptance criteria, one PASS/FAIL line each with its time budget.
//!
//! Run with `cargo test -p toric-lab --test acceptance -- --nocapture` to see
//! the table; the test fails if any criterion does.

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use toric_lab::bogomolov::{torsion_points_on_curve, uniform_scan, CorpusSpec, MemberStatus, TorsionPoints};
use toric_lab::equidist::{equilibrium_components, equilibrium_sample, galois_orbit, radial_defect, weyl_sum};
use toric_lab::exact::{euler_phi, mobius, CycElement, IntPoly};
use toric_lab::experiment::{run_experiment, ExperimentConfig, Inputs};
use toric_lab::geometry::{
    fz_fiber_check, fz_fiber_is_stab_orbit, nondegenerate_power, pinning_points, stabilizer,
    LaurentHypersurface, SupportFamily,
};
use toric_lab::heights::{canonical_height, weil_height, weil_height_cyc, AlgebraicNumber, TorusPoint};

type Check = Result<String, String>;

struct Outcome {
    id: usize,
    name: &'static str,
    budget: Duration,
    elapsed: Duration,
    result: Check,
}

fn run(id: usize, name: &'static str, budget_s: u64, f: impl FnOnce() -> Check) -> Outcome {
    let t = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f))
        .unwrap_or_else(|_| Err("panicked".into()));
    Outcome {
        id,
        name,
        budget: Duration::from_secs(budget_s),
        elapsed: t.elapsed(),
        result,
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: toric_lab::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn zeta(m: usize, k: i64) -> CycElement {
    CycElement::root_of_unity(m, k).unwrap()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Weyl sums of Galois orbits of ζ_m against a direct cosine sum and the
/// Ramanujan-sum closed form.
fn ramanujan_weyl() -> Check {
    let mut worst = 0.0f64;
    for m in 1..=200usize {
        let orbit = lib(galois_orbit(&lib(TorusPoint::from_exact(vec![zeta(m, 1)]))?))?;
        let units: Vec<usize> = (1..=m).filter(|&a| gcd(a, m) == 1).collect();
        for k in 1..=50i64 {
            let w = weyl_sum(&orbit, &[k]);
            let direct: f64 =
                units.iter().map(|&a| (TAU * (k as f64) * (a as f64) / m as f64).cos()).sum::<f64>() / units.len() as f64;
            let q = m / gcd(m, k as usize);
            let closed = mobius(q) as f64 / euler_phi(q) as f64;
            let err = (w - Complex64::new(direct, 0.0)).norm().max((w.re - closed).abs());
            worst = worst.max(err);
            ensure(err <= 1e-9, || format!("m={m} k={k}: W={w} direct={direct} closed={closed}"))?;
        }
    }
    Ok(format!("m ≤ 200, k ≤ 50, max error {worst:.1e}"))
}

/// For prime m every nonzero mode below m is 1/(m−1) in size, and the
/// orbit lies exactly on the unit circle.
fn prime_orbits() -> Check {
    let mut notes = Vec::new();
    for m in [101usize, 211, 499] {
        let orbit = lib(galois_orbit(&lib(TorusPoint::from_exact(vec![zeta(m, 1)]))?))?;
        let sup = (-10i64..=10)
            .filter(|&k| k != 0)
            .map(|k| weyl_sum(&orbit, &[k]).norm())
            .fold(0.0, f64::max);
        let want = 1.0 / (m as f64 - 1.0);
        ensure((sup - want).abs() <= 1e-9, || format!("m={m}: sup {sup} vs {want}"))?;
        let d = radial_defect(&orbit);
        ensure(d == 0.0, || format!("m={m}: radial defect {d}"))?;
        notes.push(format!("m={m} sup={sup:.6}"));
    }
    Ok(notes.join(", "))
}

fn torsion_on_line() -> Check {
    let f: LaurentHypersurface = lib("x + y - 1".parse())?;
    let TorsionPoints::Points(pts) = lib(torsion_points_on_curve(&f, 300))? else {
        return Err("coset reported on x + y - 1".into());
    };
    ensure(pts.len() == 2, || format!("{} points", pts.len()))?;
    for p in &pts {
        let x = p.exact_coords().ok_or("inexact point")?;
        ensure(lib(f.eval(&x))?.is_zero(), || format!("{p} is not on the curve"))?;
        ensure(p.torsion_order().is_some(), || format!("{p} is not torsion"))?;
    }
    let want = [(zeta(6, 1), zeta(6, -1)), (zeta(6, -1), zeta(6, 1))];
    for (a, b) in want {
        let hit = pts.iter().any(|p| p.exact_coords().unwrap() == vec![a.clone(), b.clone()]);
        ensure(hit, || format!("missing ({a}, {b})"))?;
    }
    Ok("exactly (ζ₆, ζ₆⁻¹) and (ζ₆⁻¹, ζ₆)".into())
}

fn heights() -> Check {
    let golden = lib(AlgebraicNumber::from_minpoly(&IntPoly::from_i64s(&[-1, -1, 1]), Complex64::new(1.618, 0.0)))?;
    let hg = lib(weil_height(&golden))?;
    let want = ((1.0 + 5f64.sqrt()) / 2.0).ln() / 2.0;
    ensure((hg - want).abs() <= 1e-12, || format!("golden ratio {hg} vs {want}"))?;

    let r = AlgebraicNumber::from_rational(&BigRational::new(BigInt::from(3), BigInt::from(2)));
    let h32 = lib(weil_height(&r))?;
    ensure((h32 - 3f64.ln()).abs() <= 1e-12, || format!("h(3/2) = {h32}"))?;

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let (m1, m2) = (rng.gen_range(1..=60usize), rng.gen_range(1..=60usize));
        let p = lib(TorusPoint::from_exact(vec![
            zeta(m1, rng.gen_range(0..m1 as i64)),
            zeta(m2, rng.gen_range(0..m2 as i64)),
        ]))?;
        let h = lib(canonical_height(&p))?;
        ensure(h == 0.0, || format!("ĥ({p}) = {h}"))?;
    }

    let mut worst = 0.0f64;
    for i in 0..100 {
        let num = rng.gen_range(1..=10i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let den = rng.gen_range(1..=10i64);
        let m = rng.gen_range(1..=60usize);
        let a = &lib(CycElement::from_ratio(num, den))? * &zeta(m, rng.gen_range(0..m as i64));
        let k = [-3i64, -2, 2, 3, 4][i % 5];
        let ha = lib(weil_height_cyc(&a))?;
        let hk = lib(weil_height_cyc(&lib(a.pow(k))?))?;
        let err = (hk - k.unsigned_abs() as f64 * ha).abs();
        worst = worst.max(err);
        ensure(err <= 1e-9, || format!("h(({a})^{k}) = {hk} vs {k}·{ha}"))?;
    }
    Ok(format!("golden ratio, 3/2, 50 torsion points, 100 powers (max error {worst:.1e})"))
}

/// Rank of integer vectors over ℚ by fraction-free elimination.
fn rank(mut rows: Vec<Vec<i64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let (a, b) = (rows[r][c], rows[i][c]);
                for j in 0..cols {
                    rows[i][j] = a * rows[i][j] - b * rows[r][j];
                }
            }
        }
        r += 1;
    }
    r
}

fn stabilizers() -> Check {
    let mut notes = Vec::new();
    for s in ["x + y - 1", "x*y - 1", "x^2 - y^2", "x^2*y^3 - 5"] {
        let f: LaurentHypersurface = lib(s.parse())?;
        let st = stabilizer(&f);
        let mut brute = 0u64;
        for i in 0..12 {
            for j in 0..12 {
                let a = vec![zeta(12, i), zeta(12, j)];
                let fixes = lib(f.translate(&a))?.is_scalar_multiple(&f);
                ensure(fixes == lib(st.contains(&a))?, || format!("{s}: disagreement at (ζ₁₂^{i}, ζ₁₂^{j})"))?;
                brute += fixes as u64;
            }
        }
        ensure(brute == st.count_in_mu(12), || format!("{s}: {brute} fixed vs count {}", st.count_in_mu(12)))?;
        // One-parameter subgroups t ↦ t^v preserve Z iff v is orthogonal to
        // every difference of support exponents.
        let supp = f.support();
        let mut dirs = Vec::new();
        for v0 in -3i64..=3 {
            for v1 in -3i64..=3 {
                if supp.iter().all(|u| supp.iter().all(|w| (u[0] - w[0]) * v0 + (u[1] - w[1]) * v1 == 0)) {
                    dirs.push(vec![v0, v1]);
                }
            }
        }
        let dim = rank(dirs);
        ensure(dim == st.dim, || format!("{s}: dimension {} vs {dim}", st.dim))?;
        notes.push(format!("{s}: dim {dim}, {brute} in μ₁₂²"));
    }
    Ok(notes.join("; "))
}

/// Haar-midpoint quadrature of the equilibrium measure of x + y − 1: half
/// the mass over |x| = 1 with y = 1 − x, half over |y| = 1 with x = 1 − y.
fn line_quadrature(k: [i64; 2], m: usize) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let t = TAU * (j as f64 + 0.5) / m as f64;
        let u = Complex64::from_polar(1.0, t);
        let v = Complex64::new(1.0, 0.0) - u;
        for (x, y) in [(u, v), (v, u)] {
            acc += Complex64::from_polar(1.0, k[0] as f64 * x.arg() + k[1] as f64 * y.arg());
        }
    }
    acc / (2 * m) as f64
}

fn sampler() -> Check {
    let diag: LaurentHypersurface = lib("y - x".parse())?;
    let n = 10_000;
    let s = lib(equilibrium_sample(&diag, n, 7))?;
    let w = weyl_sum(&s, &[1, -1]);
    let tol = 5.0 / (n as f64).sqrt();
    ensure((w - 1.0).norm() <= tol, || format!("y - x: W(1,-1) = {w}"))?;

    let line: LaurentHypersurface = lib("x + y - 1".parse())?;
    let n = 100_000;
    let s = lib(equilibrium_sample(&line, n, 7))?;
    let tol = (3.0 / (n as f64).sqrt()).max(1e-3);
    let mut worst = 0.0f64;
    for k0 in -5i64..=5 {
        for k1 in -5i64..=5 {
            let w = weyl_sum(&s, &[k0, k1]);
            let q = line_quadrature([k0, k1], 200_000);
            let err = (w - q).norm();
            worst = worst.max(err);
            ensure(err <= tol, || format!("x + y - 1: mode ({k0},{k1}) sample {w} vs quadrature {q}"))?;
        }
    }

    for c in ["x + y - 1", "x^2*y + y^2 + x - 3", "y - x", "x^3*y - 2"] {
        let f: LaurentHypersurface = lib(c.parse())?;
        let comps = lib(equilibrium_components(&f))?;
        let (d, total) = f.multidegree();
        let want: Vec<(usize, u64)> =
            [(1usize, d[1]), (2, d[0])].into_iter().filter(|p| p.1 > 0).map(|(i, m)| (i, m as u64)).collect();
        let got: Vec<(usize, u64)> = comps.iter().map(|c| (c.index[0], c.mass)).collect();
        ensure(got == want, || format!("{c}: components {got:?} vs {want:?}"))?;
        let sum: u64 = comps.iter().map(|c| c.mass).sum();
        ensure(sum as i64 == total, || format!("{c}: masses sum to {sum}, multidegree total {total}"))?;
    }
    Ok(format!("121 modes within {tol:.1e} (max {worst:.1e}); masses match degrees"))
}

fn fz_fiber() -> Check {
    let f: LaurentHypersurface = lib("x^2 - y^2".parse())?;
    let tuple: Vec<TorusPoint> =
        lib(["(2, 2)", "(3, -3)", "(5/7, 5/7)"].iter().map(|p| p.parse()).collect::<toric_lab::Result<_>>())?;
    ensure(lib(fz_fiber_is_stab_orbit(&f, &tuple, 12))?, || "fiber differs from the stabilizer".into())?;
    let c = lib(fz_fiber_check(&f, &tuple, 12))?;
    ensure(c.candidates == c.stabilizer_torsion, || "candidate set differs".into())?;
    let st = stabilizer(&f);
    for u in &c.candidates {
        ensure(lib(st.contains(&lib(u.point())?))?, || format!("candidate {u:?} outside Stab"))?;
    }
    Ok(format!("{} torsion translations, all in Stab", c.candidates.len()))
}

/// Fiber dimension of the line family on a corpus by hand: each point gives
/// the row (x, y) of a·x + b·y = 1.
fn line_fiber_dim(pts: &[(i64, i64)]) -> usize {
    2 - rank(pts.iter().map(|&(x, y)| vec![x, y]).collect())
}

fn pinning() -> Check {
    let fam: SupportFamily = lib("?*x + ?*y - 1".parse())?;
    let raw = [(1i64, 1i64), (1, 2)];
    let corpus: Vec<TorusPoint> =
        lib(raw.iter().map(|(x, y)| format!("({x}, {y})").parse()).collect::<toric_lab::Result<_>>())?;
    let u1 = lib(nondegenerate_power(&fam, 1, &corpus))?;
    let u2 = lib(nondegenerate_power(&fam, 2, &corpus))?;
    ensure(!u1 && u2, || format!("u=1 {u1}, u=2 {u2}"))?;
    let cert = lib(pinning_points(&fam, &corpus))?;
    let want = line_fiber_dim(&raw);
    ensure(cert.fiber_dim == want, || format!("fiber dim {} vs {want}", cert.fiber_dim))?;
    Ok(format!("u=1 false, u=2 true, fiber dim {want}"))
}

fn line_family_scan() -> Check {
    let fam: SupportFamily = lib("?*x + ?*y - 1".parse())?;
    let vals = ["1", "-1", "2", "3", "1/2", "-2", "zeta(3)", "zeta(4)", "2/3", "5"];
    let mut members = Vec::new();
    for (i, a) in vals.iter().enumerate() {
        for b in vals.iter().skip(i).step_by(3) {
            members.push(vec![lib(a.parse::<CycElement>())?, lib(b.parse::<CycElement>())?]);
        }
    }
    ensure(members.len() >= 20, || format!("only {} members", members.len()))?;
    let reports = lib(uniform_scan(&fam, &members, &[0.05], &CorpusSpec::default()))?;
    let mut accepted = 0;
    for r in &reports {
        let name = r.curve.as_deref().unwrap_or("-");
        ensure(r.status == MemberStatus::Accepted, || format!("{name}: {:?}", r.status))?;
        accepted += 1;
        ensure(r.counts[0].nontorsion == 0, || format!("{name}: {} non-torsion points", r.counts[0].nontorsion))?;
        ensure(r.torsion_count <= 2, || format!("{name}: {} torsion points", r.torsion_count))?;
    }
    Ok(format!("{accepted} members, no non-torsion point at ĥ ≤ 0.05"))
}

fn thread_determinism() -> Check {
    let cfg = ExperimentConfig::new(Inputs::Equidist {
        curve: "x + y - 1".into(),
        n: 100_000,
        k_max: 5,
        sample_path: None,
    })
    .with_seed(7);
    let mut payloads = Vec::new();
    for t in [1, 2, 4] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(|e| e.to_string())?;
        let rec = pool.install(|| run_experiment(&cfg)).map_err(|e| e.to_string())?;
        payloads.push(rec.payload.to_json());
    }
    ensure(payloads.windows(2).all(|w| w[0] == w[1]), || "payloads differ".into())?;
    Ok(format!("1, 2, 4 threads: {} identical bytes", payloads[0].len()))
}

#[test]
fn acceptance() {
    let outcomes = vec![
        run(1, "Ramanujan sums of Galois orbits", 10, ramanujan_weyl),
        run(2, "prime-conductor orbits", 5, prime_orbits),
        run(3, "torsion points on x + y - 1", 300, torsion_on_line),
        run(4, "heights", 60, heights),
        run(5, "stabilizers against brute force", 60, stabilizers),
        run(6, "equilibrium sampler", 60, sampler),
        run(7, "torsion fiber of a tuple on x^2 - y^2", 10, fz_fiber),
        run(8, "pinning the line family", 1, pinning),
        run(9, "uniform scan of the line family", 600, line_family_scan),
        run(10, "payloads across thread counts", 120, thread_determinism),
    ];
    let mut failed = 0;
    for o in &outcomes {
        let timing = format!("{:.2}s / {}s", o.elapsed.as_secs_f64(), o.budget.as_secs());
        let (ok, detail) = match &o.result {
            Ok(d) if o.elapsed <= o.budget => (true, d.clone()),
            Ok(d) => (false, format!("over budget: {d}")),
            Err(e) => (false, e.clone()),
        };
        failed += !ok as usize;
        println!("{} {:>2} {:<40} {:>16}  {}", if ok { "PASS" } else { "FAIL" }, o.id, o.name, timing, detail);
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
