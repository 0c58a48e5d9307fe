//! The Faltings–Zhang difference map and its fibers.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hypersurface::LaurentHypersurface;
use super::stabilizer::{stabilizer, UnityTuple};
use crate::error::{Error, Result};
use crate::exact::CycElement;
use crate::heights::TorusPoint;

/// `(a₀, …, a_M) ↦ (a₁a₀⁻¹, …, a_Ma₀⁻¹)`.
pub fn faltings_zhang(points: &[TorusPoint]) -> Result<Vec<TorusPoint>> {
    let Some((a0, rest)) = points.split_first() else {
        return Err(Error::invalid("faltings_zhang needs at least one point"));
    };
    let inv = a0.inv()?;
    rest.iter().map(|a| a.mul(&inv)).collect()
}

/// Outcome of comparing the brute-force translation set of a tuple with the
/// torsion of the stabilizer, both truncated at order `m_max`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberCheck {
    /// Torsion `b` (order ≤ m_max) with `b·xᵢ ∈ Z` for every tuple entry.
    pub candidates: Vec<UnityTuple>,
    /// Torsion `b` (order ≤ m_max) in Stab(Z).
    pub stabilizer_torsion: Vec<UnityTuple>,
    pub equal: bool,
}

/// Brute-force check that the translations carrying the whole tuple into Z
/// are exactly the stabilizer's, among torsion points of order ≤ `m_max`.
pub fn fz_fiber_check(
    f: &LaurentHypersurface,
    tuple: &[TorusPoint],
    m_max: usize,
) -> Result<FiberCheck> {
    if m_max == 0 {
        return Err(Error::invalid("m_max must be positive"));
    }
    let n = f.n();
    let xs = tuple
        .iter()
        .map(|p| {
            let x = p
                .exact_coords()
                .ok_or_else(|| Error::invalid(format!("tuple entry {p} is not exact")))?;
            if x.len() != n {
                return Err(Error::invalid("tuple entry has the wrong dimension"));
            }
            if !f.eval(&x)?.is_zero() {
                return Err(Error::invalid(format!("tuple entry {p} is not on Z")));
            }
            Ok(x)
        })
        .collect::<Result<Vec<_>>>()?;
    let stab = stabilizer(f);
    let per_order: Vec<Result<(Vec<UnityTuple>, Vec<UnityTuple>)>> = (1..=m_max)
        .into_par_iter()
        .map(|order| {
            let mut cand = Vec::new();
            let mut st = Vec::new();
            for exps in exact_order_tuples(order, n) {
                let u = UnityTuple {
                    order: order as u64,
                    exponents: exps,
                };
                let b = u.point()?;
                let mut all = true;
                for x in &xs {
                    let bx: Vec<CycElement> = b.iter().zip(x).map(|(p, q)| p * q).collect();
                    if !f.eval(&bx)?.is_zero() {
                        all = false;
                        break;
                    }
                }
                if stab.contains(&b)? {
                    st.push(u.clone());
                }
                if all {
                    cand.push(u);
                }
            }
            Ok((cand, st))
        })
        .collect();
    let mut candidates = Vec::new();
    let mut stabilizer_torsion = Vec::new();
    for r in per_order {
        let (c, s) = r?;
        candidates.extend(c);
        stabilizer_torsion.extend(s);
    }
    let equal = candidates == stabilizer_torsion;
    Ok(FiberCheck {
        candidates,
        stabilizer_torsion,
        equal,
    })
}

pub fn fz_fiber_is_stab_orbit(
    f: &LaurentHypersurface,
    tuple: &[TorusPoint],
    m_max: usize,
) -> Result<bool> {
    Ok(fz_fiber_check(f, tuple, m_max)?.equal)
}

/// Exponent vectors in `[0, N)^n` whose root-of-unity tuple has order exactly N.
pub(crate) fn exact_order_tuples(order: usize, n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut e = vec![0usize; n];
    loop {
        let g = e.iter().fold(order, |g, &k| g.gcd(&k));
        if g == 1 {
            out.push(e.iter().map(|&k| k as i64).collect());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            e[i] += 1;
            if e[i] < order {
                break;
            }
            e[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> TorusPoint {
        s.parse().unwrap()
    }

    #[test]
    fn fz_examples() {
        let p = pt("(2, 3)");
        let img = faltings_zhang(&[p.clone(), p.clone(), p.clone()]).unwrap();
        assert_eq!(img, vec![pt("(1,1)"), pt("(1,1)")]);
        let img = faltings_zhang(&[pt("(2,3)"), pt("(4,9)")]).unwrap();
        assert_eq!(img, vec![pt("(2,3)")]);
    }

    #[test]
    fn translation_invariance() {
        let b = pt("(zeta(5), 7/3)");
        let tuple = [pt("(2,3)"), pt("(zeta(3), 1/2)"), pt("(5, zeta(4))")];
        let moved: Vec<TorusPoint> = tuple.iter().map(|a| b.mul(a).unwrap()).collect();
        assert_eq!(faltings_zhang(&tuple).unwrap(), faltings_zhang(&moved).unwrap());
    }

    #[test]
    fn order_tuples() {
        assert_eq!(exact_order_tuples(1, 2), vec![vec![0, 0]]);
        // Pairs of exact order 4: 16 − 4 = 12.
        assert_eq!(exact_order_tuples(4, 2).len(), 12);
    }

    #[test]
    fn trivial_stabilizer_line() {
        let f: LaurentHypersurface = "x + y - 1".parse().unwrap();
        let tuple = [pt("(2, -1)"), pt("(1/2, 1/2)")];
        let c = fz_fiber_check(&f, &tuple, 8).unwrap();
        assert!(c.equal);
        assert_eq!(c.candidates, vec![UnityTuple { order: 1, exponents: vec![0, 0] }]);
    }

    #[test]
    fn off_curve_tuple_rejected() {
        let f: LaurentHypersurface = "x + y - 1".parse().unwrap();
        assert!(fz_fiber_check(&f, &[pt("(2, 2)")], 4).is_err());
    }
}
