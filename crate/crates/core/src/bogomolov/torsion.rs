//! Torsion points on curves in 𝐆ₘ².
//!
//! For every root of unity `x₀` of order ≤ m_max the fiber `F(x₀, y) = 0` is
//! solved numerically; roots that sit on the unit circle at a rational angle
//! with small denominator become candidates, and each candidate is confirmed
//! by exact evaluation in ℚ(ζ).

use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::CycElement;
use crate::geometry::{torsion_coset_test, CosetKind, LaurentHypersurface};
use crate::heights::{numeric_roots, TorusPoint};

/// Distance in angle (turns) and modulus allowed for a numeric candidate.
const MATCH_TOL: f64 = 1e-7;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TorsionPoints {
    /// All torsion points with both orders ≤ m_max, sorted by
    /// `(ord x, exp x, ord y, exp y)`.
    Points(Vec<TorusPoint>),
    /// The curve contains a torsion coset, so its torsion points are infinite.
    CosetDetected,
}

impl TorsionPoints {
    pub fn points(&self) -> Option<&[TorusPoint]> {
        match self {
            TorsionPoints::Points(p) => Some(p),
            TorsionPoints::CosetDetected => None,
        }
    }
}

/// `(order, exponent)` with `gcd(exponent, order) = 1`.
type Root = (usize, usize);

fn root_value(r: Root) -> Result<CycElement> {
    CycElement::root_of_unity(r.0, r.1 as i64)
}

/// Torsion points of order ≤ `m_max` in both coordinates.
pub fn torsion_points_on_curve(f: &LaurentHypersurface, m_max: usize) -> Result<TorsionPoints> {
    if f.n() != 2 {
        return Err(Error::Capability(format!(
            "torsion enumeration is implemented for curves in 𝐆ₘ², got n = {}",
            f.n()
        )));
    }
    if m_max == 0 {
        return Err(Error::invalid("m_max must be at least 1"));
    }
    if torsion_coset_test(f) == (CosetKind::Coset { torsion: true }) {
        return Ok(TorsionPoints::CosetDetected);
    }
    let (d, _) = f.multidegree();
    // Iterate over the coordinate in which F may be constant; solve for the other.
    let (it, sv) = if d[1] > 0 { (0, 1) } else { (1, 0) };
    let per_order: Vec<Result<Option<Vec<(Root, Root)>>>> = (1..=m_max)
        .into_par_iter()
        .map(|a| {
            let mut out = Vec::new();
            for i in (0..a).filter(|i| i.gcd(&a) == 1) {
                match fiber(f, it, sv, (a, i), m_max)? {
                    Some(ys) => out.extend(ys.into_iter().map(|y| ((a, i), y))),
                    None => return Ok(None),
                }
            }
            Ok(Some(out))
        })
        .collect();
    let mut pairs = Vec::new();
    for r in per_order {
        match r? {
            Some(p) => pairs.extend(p),
            None => return Ok(TorsionPoints::CosetDetected),
        }
    }
    let mut keyed: Vec<((Root, Root), TorusPoint)> = pairs
        .into_iter()
        .map(|(u, v)| {
            let mut c = [root_value(u)?, root_value(v)?];
            if it == 1 {
                c.swap(0, 1);
            }
            let key = if it == 0 { (u, v) } else { (v, u) };
            Ok((key, TorusPoint::from_exact(c.to_vec())?))
        })
        .collect::<Result<_>>()?;
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    Ok(TorsionPoints::Points(keyed.into_iter().map(|(_, p)| p).collect()))
}

/// Torsion solutions `y` (order ≤ m_max) over the root of unity `x`, or
/// `None` if the whole fiber lies on Z.
fn fiber(f: &LaurentHypersurface, it: usize, sv: usize, x: Root, m_max: usize) -> Result<Option<Vec<Root>>> {
    let mut at = [Complex64::new(1.0, 0.0); 2];
    at[it] = Complex64::from_polar(1.0, TAU * x.1 as f64 / x.0 as f64);
    let c = f.specialize_complex(sv, &at);
    let scale: f64 = f.terms().iter().map(|(_, c)| c.to_complex().norm()).sum();
    let candidates: Vec<Root> = if c.iter().all(|z| z.norm() <= 1e-12 * scale) {
        let mut exact_at = vec![CycElement::one(); 2];
        exact_at[it] = root_value(x)?;
        if f.specialize(sv, &exact_at)?.iter().all(CycElement::is_zero) {
            return Ok(None);
        }
        Vec::new()
    } else {
        match numeric_roots(&c, 1e-8) {
            Ok(roots) => roots.iter().filter_map(|&y| rational_angle(y, m_max)).collect(),
            // Ill-conditioned fiber: test every root of unity numerically.
            Err(_) => (1..=m_max)
                .flat_map(|b| (0..b).filter(move |j| j.gcd(&b) == 1).map(move |j| (b, j)))
                .filter(|&(b, j)| {
                    let y = Complex64::from_polar(1.0, TAU * j as f64 / b as f64);
                    let v: Complex64 = c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * y + a);
                    v.norm() <= 1e-6 * scale
                })
                .collect(),
        }
    };
    let mut out = Vec::new();
    for y in candidates {
        if out.contains(&y) {
            continue;
        }
        let mut p = [root_value(x)?, root_value(y)?];
        if it == 1 {
            p.swap(0, 1);
        }
        if f.eval(&p)?.is_zero() {
            out.push(y);
        }
    }
    Ok(Some(out))
}

/// `(b, j)` if `y ≈ e^{2πij/b}` with `b ≤ m_max`, `gcd(j, b) = 1`.
fn rational_angle(y: Complex64, m_max: usize) -> Option<Root> {
    if (y.norm() - 1.0).abs() > MATCH_TOL {
        return None;
    }
    let t = (y.arg() / TAU).rem_euclid(1.0);
    for b in 1..=m_max {
        let j = (t * b as f64).round();
        if (t - j / b as f64).abs() < MATCH_TOL {
            let j = (j as usize) % b;
            if j.gcd(&b) == 1 {
                return Some((b, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(s: &str) -> LaurentHypersurface {
        s.parse().unwrap()
    }

    fn pts(s: &str, m: usize) -> Vec<String> {
        match torsion_points_on_curve(&curve(s), m).unwrap() {
            TorsionPoints::Points(p) => p.iter().map(|p| p.to_string()).collect(),
            TorsionPoints::CosetDetected => vec!["coset".into()],
        }
    }

    /// All pairs of roots of unity of order ≤ m, tested exactly.
    fn brute(f: &LaurentHypersurface, m: usize) -> Vec<TorusPoint> {
        let roots: Vec<Root> = (1..=m)
            .flat_map(|a| (0..a).filter(move |i| i.gcd(&a) == 1).map(move |i| (a, i)))
            .collect();
        let mut out = Vec::new();
        for &u in &roots {
            for &v in &roots {
                let p = vec![root_value(u).unwrap(), root_value(v).unwrap()];
                if f.eval(&p).unwrap().is_zero() {
                    out.push(TorusPoint::from_exact(p).unwrap());
                }
            }
        }
        out
    }

    #[test]
    fn line_has_two_torsion_points() {
        let f = curve("x + y - 1");
        let TorsionPoints::Points(p) = torsion_points_on_curve(&f, 30).unwrap() else {
            panic!("not a coset")
        };
        assert_eq!(p, brute(&f, 30));
        assert_eq!(p.len(), 2);
        assert_eq!(p[0].to_string(), "(zeta(6), zeta(6)^5)");
    }

    #[test]
    fn far_line_and_coset() {
        assert!(pts("x + y - 3", 30).is_empty());
        assert_eq!(pts("x*y - 1", 30), vec!["coset"]);
    }

    #[test]
    fn matches_brute_force() {
        for s in ["x - y + 1", "2*x + 3*y - 1", "x^2 + y^2 + x*y", "x + y + 1", "y^2 - x^3 + 2", "x^2 + x + 1"] {
            let f = LaurentHypersurface::parse_with_dim(s, 2).unwrap();
            let got = torsion_points_on_curve(&f, 12).unwrap();
            assert_eq!(got.points().unwrap(), brute(&f, 12).as_slice(), "{s}");
        }
    }

    #[test]
    fn symmetric_support_gives_swap_closed_set() {
        for s in ["x + y + 1", "x*y + x + y", "x^2*y + x*y^2 + x + y + 1"] {
            let p = torsion_points_on_curve(&curve(s), 24).unwrap();
            let p = p.points().unwrap();
            for q in p {
                let c = q.exact_coords().unwrap();
                let sw = TorusPoint::from_exact(vec![c[1].clone(), c[0].clone()]).unwrap();
                assert!(p.contains(&sw), "{s}: {sw}");
            }
        }
        assert_eq!(pts("x*y + x + y", 24).len(), 2);
    }

    #[test]
    fn monotone_in_order() {
        let a = pts("x^3 + y^3 + 1", 6);
        let b = pts("x^3 + y^3 + 1", 18);
        assert!(a.iter().all(|p| b.contains(p)));
        assert!(b.len() >= a.len());
    }
}
