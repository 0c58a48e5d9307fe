//! Small-height point searches on curves and uniform scans over families.

use std::collections::HashSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::torsion::{torsion_points_on_curve, TorsionPoints};
use crate::error::{Error, Result};
use crate::exact::{euler_phi, factor_with_cap, units_mod, CycElement, DEFAULT_DEGREE_CAP};
use crate::geometry::{
    generates_ambient, stabilizer, torsion_coset_test, CosetKind, Generation, LaurentHypersurface,
    SupportFamily,
};
use crate::heights::{log_mahler_measure, norm_poly, numeric_roots, weil_height_cyc, AlgebraicNumber, Coord, TorusPoint};

/// Relative residual accepted when matching roots of the norm polynomial
/// back to the fiber they came from.
const FIBER_TOL: f64 = 1e-10;

/// Floating-point allowance when discarding points by a height lower bound;
/// covers the error of numerically computed roots.
const PRUNE_SLACK: f64 = 1e-6;

/// Finite sets of first coordinates `x₀ = r·ζ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CorpusSpec {
    /// Bound on `|numerator|` of `r`.
    pub max_num: u32,
    /// Bound on the denominator of `r`.
    pub max_den: u32,
    /// Bound on the order of `ζ`.
    pub max_root_order: u32,
    /// Order bound for the torsion enumeration merged into every scan.
    pub torsion_order: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            max_num: 10,
            max_den: 10,
            max_root_order: 60,
            torsion_order: 60,
        }
    }
}

impl CorpusSpec {
    pub fn validate(&self) -> Result<()> {
        for (k, v) in [
            ("max_num", self.max_num as usize),
            ("max_den", self.max_den as usize),
            ("max_root_order", self.max_root_order as usize),
            ("torsion_order", self.torsion_order),
        ] {
            if v == 0 {
                return Err(Error::config(k, "must be positive"));
            }
        }
        Ok(())
    }

    /// Corpus values with `h(x₀) = log max(|p|, q) ≤ bound`, each with its
    /// height, in order of `(q, p)` then `(order, exponent)` of `ζ`.
    pub fn values(&self, bound: f64) -> Vec<(CycElement, f64)> {
        let mut rationals = Vec::new();
        for q in 1..=self.max_den as i64 {
            for p in -(self.max_num as i64)..=self.max_num as i64 {
                if p == 0 || p.gcd(&q) != 1 {
                    continue;
                }
                let h = (p.abs().max(q) as f64).ln();
                if h <= bound {
                    rationals.push((p, q, h));
                }
            }
        }
        let mut roots = Vec::new();
        for m in 1..=self.max_root_order as usize {
            for k in (0..m).filter(|k| k.gcd(&m) == 1) {
                roots.push(CycElement::root_of_unity(m, k as i64).expect("valid order"));
            }
        }
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for (p, q, h) in rationals {
            let r = CycElement::from_ratio(p, q).expect("nonzero denominator");
            for z in &roots {
                let v = &r * z;
                if seen.insert(v.clone()) {
                    out.push((v, h));
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointSource {
    Torsion,
    /// First coordinate a corpus rational or a corpus root of unity.
    CurveSection,
    /// First coordinate a nontrivial product `r·ζ`.
    CorpusProduct,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmallPointRecord {
    pub point: TorusPoint,
    pub height: f64,
    pub source: PointSource,
    pub curve: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanOutput {
    pub records: Vec<SmallPointRecord>,
    /// Corpus values skipped, with the reason.
    pub audit: Vec<String>,
}

/// Points of `Z(F)` with `ĥ ≤ bound` whose first coordinate lies in the
/// corpus (second coordinate when `F` does not involve `y`), merged with the
/// torsion points of order ≤ `corpus.torsion_order`.
///
/// Values with `h(x₀) > bound` are pruned since `ĥ(x₀, y) ≥ h(x₀)`.
pub fn small_point_scan(f: &LaurentHypersurface, corpus: &CorpusSpec, bound: f64) -> Result<ScanOutput> {
    if f.n() != 2 {
        return Err(Error::Capability(format!("small-point scans are implemented for curves in 𝐆ₘ², got n = {}", f.n())));
    }
    if !(bound > 0.0 && bound.is_finite()) {
        return Err(Error::invalid("bound must be positive"));
    }
    corpus.validate()?;
    let curve = f.to_string();
    let mut audit = Vec::new();
    let mut records = Vec::new();
    match torsion_points_on_curve(f, corpus.torsion_order)? {
        TorsionPoints::Points(p) => records.extend(p.into_iter().map(|point| SmallPointRecord {
            point,
            height: 0.0,
            source: PointSource::Torsion,
            curve: curve.clone(),
        })),
        TorsionPoints::CosetDetected => audit.push("curve contains a torsion coset; torsion points not enumerated".into()),
    }
    let (d, _) = f.multidegree();
    let (it, sv) = if d[1] > 0 { (0, 1) } else { (1, 0) };
    let values = corpus.values(bound);
    let found: Vec<(Vec<SmallPointRecord>, Vec<String>)> = values
        .par_iter()
        .map(|(x0, h0)| {
            let mut audit = Vec::new();
            let recs = match fiber_points(f, it, sv, x0, *h0, bound) {
                Ok(r) => r,
                Err(e) => {
                    audit.push(format!("x0 = {x0}: {e}"));
                    Vec::new()
                }
            };
            let recs = recs
                .into_iter()
                .map(|(point, height)| {
                    let source = if point.torsion_order().is_some() {
                        PointSource::Torsion
                    } else if x0.is_rational() || x0.root_of_unity_order().is_some() {
                        PointSource::CurveSection
                    } else {
                        PointSource::CorpusProduct
                    };
                    SmallPointRecord {
                        point,
                        height,
                        source,
                        curve: curve.clone(),
                    }
                })
                .collect();
            (recs, audit)
        })
        .collect();
    for (r, a) in found {
        records.extend(r);
        audit.extend(a);
    }
    let mut seen = HashSet::new();
    records.retain(|r| seen.insert(r.point.to_string()));
    Ok(ScanOutput { records, audit })
}

/// Points over one corpus value with `ĥ ≤ bound`.
fn fiber_points(
    f: &LaurentHypersurface,
    it: usize,
    sv: usize,
    x0: &CycElement,
    h0: f64,
    bound: f64,
) -> Result<Vec<(TorusPoint, f64)>> {
    let mut at = vec![CycElement::one(); 2];
    at[it] = x0.clone();
    let mut c = f.specialize(sv, &at)?;
    while c.last().is_some_and(CycElement::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::Capability("the whole fiber lies on the curve".into()));
    }
    // Roots y = 0 are off the torus.
    let lead_zeros = c.iter().take_while(|e| e.is_zero()).count();
    let c = &c[lead_zeros..];
    let place = |y: Coord| -> Result<TorusPoint> {
        let mut p = vec![Coord::Exact(x0.clone()), y];
        if it == 1 {
            p.swap(0, 1);
        }
        TorusPoint::new(p)
    };
    let mut out = Vec::new();
    match c.len() {
        1 => {}
        2 => {
            let y = -&(&c[0] / &c[1]);
            if h0 + archimedean_bound(&y) > bound + PRUNE_SLACK {
                return Ok(out);
            }
            let h = h0 + weil_height_cyc(&y)?;
            if h <= bound {
                out.push((place(Coord::Exact(y))?, h));
            }
        }
        _ => {
            if fiber_bound(c).is_ok_and(|b| h0 + b > bound + PRUNE_SLACK) {
                return Ok(out);
            }
            let m = c.iter().fold(1usize, |m, e| m.lcm(&e.conductor()));
            let norm_deg = (c.len() - 1) * euler_phi(m);
            if norm_deg > DEFAULT_DEGREE_CAP {
                return Err(Error::Capability(format!(
                    "fiber norm has degree {norm_deg}, above the factorization cap {DEFAULT_DEGREE_CAP}"
                )));
            }
            let norm = norm_poly(c)?;
            let cz: Vec<_> = c.iter().map(CycElement::to_complex).collect();
            for (g, _) in factor_with_cap(&norm, DEFAULT_DEGREE_CAP)? {
                if g.deg() == 0 {
                    continue;
                }
                let hy = log_mahler_measure(&g)? / g.deg() as f64;
                if h0 + hy > bound {
                    continue;
                }
                for y in AlgebraicNumber::roots_of(&g)? {
                    let z = y.approx();
                    let v = cz.iter().rev().fold(num_complex::Complex64::new(0.0, 0.0), |a, &k| a * z + k);
                    let mag = cz.iter().rev().fold(0.0, |a, k| a * z.norm() + k.norm());
                    if v.norm() > FIBER_TOL * mag {
                        continue;
                    }
                    let coord = if let Some(r) = y.as_rational() {
                        Coord::Exact(CycElement::from_rational(&r))
                    } else if let Some(e) = y.to_cyc() {
                        Coord::Exact(e)
                    } else {
                        Coord::Algebraic(y)
                    };
                    out.push((place(coord)?, h0 + hy));
                }
            }
        }
    }
    Ok(out)
}

/// Lower bound for `h(y)`: the larger of the averages of `log⁺|σ(y)|` and
/// `log⁺|σ(y)⁻¹|` over the embeddings (`h(y) = h(1/y)`).
fn archimedean_bound(y: &CycElement) -> f64 {
    let units = units_mod(y.conductor());
    let (up, down) = units.iter().fold((0.0, 0.0), |(u, d), &a| {
        let l = y.embed(a).norm().ln();
        (u + l.max(0.0), d + (-l).max(0.0))
    });
    f64::max(up, down) / units.len() as f64
}

/// Lower bound for the height of every root of `Σ cᵢ yⁱ`: each root has, for
/// every embedding σ of the coefficient field, conjugates among the roots
/// of the σ-image, so the average over σ of the smallest `log⁺|r|` (or
/// `log⁺|r⁻¹|`) bounds its archimedean part.
fn fiber_bound(c: &[CycElement]) -> Result<f64> {
    let m = c.iter().fold(1usize, |m, e| m.lcm(&e.conductor()));
    let units = units_mod(m);
    let (mut up, mut down) = (0.0, 0.0);
    for &a in &units {
        let cz: Vec<_> = c.iter().map(|e| e.embed(a % e.conductor())).collect();
        let roots = numeric_roots(&cz, FIBER_TOL)?;
        let logs = roots.iter().map(|r| r.norm().ln());
        up += logs.clone().fold(f64::INFINITY, f64::min).max(0.0);
        down += logs.map(|l| -l).fold(f64::INFINITY, f64::min).max(0.0);
    }
    Ok(f64::max(up, down) / units.len() as f64)
}

/// Drops every record if `Z(F)` is itself a coset of a subtorus (then the
/// essential locus is empty); otherwise returns them unchanged.
pub fn essential_locus_filter(f: &LaurentHypersurface, records: Vec<SmallPointRecord>) -> (Vec<SmallPointRecord>, usize) {
    match torsion_coset_test(f) {
        CosetKind::NotCoset => (records, 0),
        CosetKind::Coset { .. } => {
            let n = records.len();
            (Vec::new(), n)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MemberStatus {
    Accepted,
    Skipped { hypothesis: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThresholdCount {
    pub threshold: f64,
    pub count: usize,
    pub nontorsion: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub member: usize,
    pub params: Vec<CycElement>,
    pub curve: Option<String>,
    pub status: MemberStatus,
    /// One entry per threshold, ascending.
    pub counts: Vec<ThresholdCount>,
    pub min_positive_height: Option<f64>,
    pub torsion_count: usize,
    pub filtered: usize,
    /// Some count exceeds the maximum over earlier accepted members.
    pub exceeds_prior_max: bool,
    pub audit: Vec<String>,
}

impl ScanReport {
    /// `(member, threshold, count)` rows for plotting.
    pub fn table_rows(&self) -> Vec<(usize, f64, usize)> {
        self.counts.iter().map(|c| (self.member, c.threshold, c.count)).collect()
    }
}

/// Total degree of the family's full support.
fn family_degree(fam: &SupportFamily) -> i64 {
    (0..fam.n())
        .map(|i| {
            let it = fam.terms().iter().map(|(v, _)| v[i]);
            it.clone().max().unwrap_or(0) - it.min().unwrap_or(0)
        })
        .sum()
}

/// Scans every member of `fam` at the given parameter values.
///
/// Members whose multidegree total differs from the family's, whose
/// stabilizer is infinite, or that fail the generation test are reported as
/// skipped with the failing hypothesis named.
pub fn uniform_scan(
    fam: &SupportFamily,
    members: &[Vec<CycElement>],
    thresholds: &[f64],
    corpus: &CorpusSpec,
) -> Result<Vec<ScanReport>> {
    if fam.n() != 2 {
        return Err(Error::Capability("uniform scans are implemented for curve families".into()));
    }
    if thresholds.is_empty() || thresholds.iter().any(|t| !(*t > 0.0 && t.is_finite())) {
        return Err(Error::config("thresholds", "must be a nonempty list of positive numbers"));
    }
    if thresholds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::config("thresholds", "must be strictly increasing"));
    }
    corpus.validate()?;
    let d = family_degree(fam);
    let bound = *thresholds.last().unwrap();
    let mut reports: Vec<ScanReport> = members
        .par_iter()
        .enumerate()
        .map(|(i, s)| scan_member(fam, i, s, d, thresholds, bound, corpus))
        .collect::<Result<_>>()?;
    let mut max: Vec<usize> = vec![0; thresholds.len()];
    let mut any = false;
    for r in &mut reports {
        if r.status != MemberStatus::Accepted {
            continue;
        }
        if any {
            r.exceeds_prior_max = r.counts.iter().zip(&max).any(|(c, m)| c.count > *m);
        }
        for (c, m) in r.counts.iter().zip(max.iter_mut()) {
            *m = (*m).max(c.count);
        }
        any = true;
    }
    Ok(reports)
}

fn scan_member(
    fam: &SupportFamily,
    member: usize,
    params: &[CycElement],
    d: i64,
    thresholds: &[f64],
    bound: f64,
    corpus: &CorpusSpec,
) -> Result<ScanReport> {
    let mut report = ScanReport {
        member,
        params: params.to_vec(),
        curve: None,
        status: MemberStatus::Accepted,
        counts: Vec::new(),
        min_positive_height: None,
        torsion_count: 0,
        filtered: 0,
        exceeds_prior_max: false,
        audit: Vec::new(),
    };
    let skip = |mut r: ScanReport, h: &str| {
        r.status = MemberStatus::Skipped { hypothesis: h.into() };
        Ok(r)
    };
    let f = match fam.instantiate(params) {
        Ok(f) => f,
        Err(Error::InvalidInput(_)) => return skip(report, "nondegenerate-member"),
        Err(e) => return Err(e),
    };
    report.curve = Some(f.to_string());
    if f.multidegree().1 != d {
        return skip(report, "multidegree");
    }
    if !stabilizer(&f).is_finite() {
        return skip(report, "finite-stabilizer");
    }
    if generates_ambient(&f) == Generation::No {
        return skip(report, "generation");
    }
    let out = small_point_scan(&f, corpus, bound)?;
    report.audit = out.audit;
    let (records, filtered) = essential_locus_filter(&f, out.records);
    report.filtered = filtered;
    report.torsion_count = records.iter().filter(|r| r.source == PointSource::Torsion).count();
    report.min_positive_height = records
        .iter()
        .filter(|r| r.source != PointSource::Torsion)
        .map(|r| r.height)
        .min_by(f64::total_cmp);
    report.counts = thresholds
        .iter()
        .map(|&t| {
            let below: Vec<_> = records.iter().filter(|r| r.height <= t).collect();
            ThresholdCount {
                threshold: t,
                count: below.len(),
                nontorsion: below.iter().filter(|r| r.source != PointSource::Torsion).count(),
            }
        })
        .collect();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> LaurentHypersurface {
        s.parse().unwrap()
    }

    fn small() -> CorpusSpec {
        CorpusSpec {
            max_num: 10,
            max_den: 3,
            max_root_order: 12,
            torsion_order: 30,
        }
    }

    fn heights_of(out: &ScanOutput) -> Vec<(String, f64)> {
        out.records.iter().map(|r| (r.point.to_string(), r.height)).collect()
    }

    #[test]
    fn line_small_points() {
        let out = small_point_scan(&curve("x + y - 1"), &small(), 1.5).unwrap();
        let h = heights_of(&out);
        let find = |s: &str| h.iter().find(|(p, _)| p == s).map(|(_, h)| *h);
        let l2 = 2f64.ln();
        assert!((find("(2, -1)").unwrap() - l2).abs() < 1e-10);
        assert!((find("(-1, 2)").unwrap() - l2).abs() < 1e-10);
        assert!((find("(1/2, 1/2)").unwrap() - 2.0 * l2).abs() < 1e-10);
        assert!(out.records.iter().all(|r| r.height <= 1.5));
        assert!(out.audit.is_empty());
    }

    #[test]
    fn tiny_bound_leaves_torsion() {
        let out = small_point_scan(&curve("x + y - 1"), &small(), 0.05).unwrap();
        assert_eq!(out.records.len(), 2);
        assert!(out.records.iter().all(|r| r.source == PointSource::Torsion && r.height == 0.0));
        assert!(small_point_scan(&curve("x + y - 3"), &small(), 0.3).unwrap().records.is_empty());
    }

    #[test]
    fn emitted_points_lie_on_the_curve() {
        for s in ["x + y - 1", "y^2 - x - 1", "x^2*y + y - 3"] {
            let f = curve(s);
            let out = small_point_scan(&f, &small(), 1.2).unwrap();
            for r in &out.records {
                assert!(r.height >= 0.0);
                assert_eq!(r.height == 0.0, r.source == PointSource::Torsion);
                match r.point.exact_coords() {
                    Some(x) => assert!(f.eval(&x).unwrap().is_zero(), "{s}: {}", r.point),
                    None => {
                        let z = r.point.to_complex();
                        let v = f.eval_complex(&z).norm();
                        let mag: f64 = f.terms().iter().map(|(e, c)| {
                            c.to_complex().norm() * z[0].norm().powi(e[0] as i32) * z[1].norm().powi(e[1] as i32)
                        }).sum();
                        assert!(v <= 1e-10 * mag, "{s}: {}", r.point);
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_fiber_heights() {
        // y² = x + 1 at x = 1: y = ±√2, ĥ = 0 + ½·log 2.
        let out = small_point_scan(&curve("y^2 - x - 1"), &small(), 0.5).unwrap();
        let sqrt2: Vec<_> = out
            .records
            .iter()
            .filter(|r| (r.point.to_complex()[0] - 1.0).norm() < 1e-12 && r.point.to_complex()[1].norm() > 1.4)
            .collect();
        assert_eq!(sqrt2.len(), 2);
        for r in sqrt2 {
            assert!((r.height - 0.5 * 2f64.ln()).abs() < 1e-10);
        }
    }

    #[test]
    fn coset_filtering() {
        let f = curve("x*y - 1");
        let out = small_point_scan(&f, &small(), 0.5).unwrap();
        assert!(!out.records.is_empty());
        let (kept, n) = essential_locus_filter(&f, out.records.clone());
        assert!(kept.is_empty());
        assert_eq!(n, out.records.len());
        let g = curve("x + y - 1");
        let recs = small_point_scan(&g, &small(), 0.05).unwrap().records;
        assert_eq!(essential_locus_filter(&g, recs.clone()), (recs, 0));
        assert_eq!(essential_locus_filter(&g, Vec::new()), (Vec::new(), 0));
    }

    #[test]
    fn corpus_prunes_by_height() {
        let c = CorpusSpec::default();
        let v = c.values(0.05);
        assert!(v.iter().all(|(x, h)| *h == 0.0 && x.root_of_unity_order().is_some()));
        let phi_sum: usize = (1..=60).map(crate::exact::euler_phi).sum();
        // Roots of unity times ±1: orders ≤ 60 plus the new odd-order negatives.
        let odd_new: usize = (1..=60usize).filter(|m| m % 2 == 1 && 2 * m > 60).map(crate::exact::euler_phi).sum();
        assert_eq!(v.len(), phi_sum + odd_new);
    }

    #[test]
    fn line_family_scan() {
        let fam: SupportFamily = "?*x + ?*y - 1".parse().unwrap();
        let m = |a: i64, b: i64| vec![CycElement::from_int(a), CycElement::from_int(b)];
        let corpus = CorpusSpec { max_root_order: 12, torsion_order: 30, ..small() };
        let r = uniform_scan(&fam, &[m(1, 1), m(1, -1), m(2, 3)], &[0.05, 1.0], &corpus).unwrap();
        assert!(r.iter().all(|r| r.status == MemberStatus::Accepted));
        let at = |i: usize| r[i].counts[0].count;
        // 2x + 3y = 1 passes through the torsion point (−1, 1).
        assert_eq!((at(0), at(1), at(2)), (2, 2, 1));
        assert!(r.iter().all(|r| r.counts[0].count <= r.counts[1].count));
        assert!(uniform_scan(&fam, &[], &[0.05], &corpus).unwrap().is_empty());
    }

    #[test]
    fn skipped_hypotheses() {
        let fam: SupportFamily = "?*x*y + ?*x + ?".parse().unwrap();
        let m = |v: [i64; 3]| v.iter().map(|&a| CycElement::from_int(a)).collect::<Vec<_>>();
        let corpus = CorpusSpec { max_root_order: 6, torsion_order: 12, ..small() };
        let r = uniform_scan(&fam, &[m([1, 1, 1]), m([1, 0, -1]), m([0, 1, 1])], &[0.05], &corpus).unwrap();
        assert_eq!(r[0].status, MemberStatus::Accepted);
        assert_eq!(r[1].status, MemberStatus::Skipped { hypothesis: "finite-stabilizer".into() });
        assert_eq!(r[2].status, MemberStatus::Skipped { hypothesis: "multidegree".into() });
    }
}
