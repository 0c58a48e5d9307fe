//! Fixed-support coefficient families and pinning points.
//!
//! For a point P the condition `P ∈ Z(F_s)` is affine-linear in the free
//! coefficients `s`, so finiteness of a parameter fiber is a rank question.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::hypersurface::{parse_document, parse_expression, Coeff, LaurentHypersurface};
use crate::error::{Error, Result};
use crate::exact::CycElement;
use crate::heights::TorusPoint;

/// `F_s = Σ_{v ∈ fixed} c_v x^v + Σ_j s_j x^{w_j}`.
#[derive(Clone, PartialEq)]
pub struct SupportFamily {
    n: usize,
    /// Descending lexicographic (display order); `None` marks a free
    /// coefficient, and parameters are numbered in this order.
    terms: Vec<(Vec<i64>, Option<CycElement>)>,
}

impl SupportFamily {
    pub fn new(n: usize, terms: Vec<(Vec<i64>, Option<CycElement>)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (v, c) in terms {
            if v.len() != n {
                return Err(Error::invalid(format!("exponent {v:?} has wrong length")));
            }
            if c.as_ref().is_some_and(CycElement::is_zero) {
                return Err(Error::invalid(format!("zero fixed coefficient at {v:?}")));
            }
            if map.insert(v.clone(), c).is_some() {
                return Err(Error::invalid(format!("duplicate exponent {v:?}")));
            }
        }
        Ok(SupportFamily {
            n,
            terms: map.into_iter().rev().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Vec<i64>, Option<CycElement>)] {
        &self.terms
    }

    /// Exponents carrying free coefficients, in parameter order.
    pub fn free_exponents(&self) -> Vec<Vec<i64>> {
        self.terms
            .iter()
            .filter(|(_, c)| c.is_none())
            .map(|(v, _)| v.clone())
            .collect()
    }

    pub fn free_count(&self) -> usize {
        self.terms.iter().filter(|(_, c)| c.is_none()).count()
    }

    /// `(row, rhs)` with `P ∈ Z(F_s)` iff `row · s = rhs`.
    pub fn membership(&self, p: &[CycElement]) -> Result<(Vec<CycElement>, CycElement)> {
        if p.len() != self.n {
            return Err(Error::invalid("point dimension differs from the family's"));
        }
        let mut row = Vec::new();
        let mut rhs = CycElement::zero();
        for (v, c) in &self.terms {
            let mut mono = CycElement::one();
            for (x, &e) in p.iter().zip(v) {
                if e != 0 {
                    mono = &mono * &x.pow(e)?;
                }
            }
            match c {
                None => row.push(mono),
                Some(c) => rhs = &rhs - &(c * &mono),
            }
        }
        Ok((row, rhs))
    }

    /// The member at parameter values `s`; vanishing coefficients are dropped.
    pub fn instantiate(&self, s: &[CycElement]) -> Result<LaurentHypersurface> {
        if s.len() != self.free_count() {
            return Err(Error::invalid(format!(
                "family has {} parameters, got {}",
                self.free_count(),
                s.len()
            )));
        }
        let mut it = s.iter();
        let terms = self
            .terms
            .iter()
            .filter_map(|(v, c)| {
                let c = match c {
                    Some(c) => c.clone(),
                    None => it.next().unwrap().clone(),
                };
                (!c.is_zero()).then(|| (v.clone(), c))
            })
            .collect();
        LaurentHypersurface::new(self.n, terms)
    }

    pub fn to_document(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (v, c) in &self.terms {
            let e: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            let c = c.as_ref().map_or("?".to_string(), |c| c.to_string());
            s.push_str(&format!("term {} : {c}\n", e.join(" ")));
        }
        s
    }
}

impl fmt::Display for SupportFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_document().trim_end().replace('\n', "; "))
    }
}

impl fmt::Debug for SupportFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for SupportFamily {
    type Err = Error;

    /// A document (`n …` / `term … : ?`) or an expression like `?*x + ?*y - 1`.
    fn from_str(s: &str) -> Result<Self> {
        let first = s.lines().map(|l| l.split('#').next().unwrap().trim()).find(|l| !l.is_empty());
        let (n, terms) = if first.is_some_and(|l| l.starts_with("n ")) {
            parse_document(s)?
        } else {
            parse_expression(s, None)?
        };
        let terms = terms
            .into_iter()
            .map(|(v, c)| match c {
                Coeff::Free => (v, None),
                Coeff::Value(c) => (v, Some(c)),
            })
            .collect();
        SupportFamily::new(n, terms)
    }
}

impl Serialize for SupportFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_document())
    }
}

impl<'de> Deserialize<'de> for SupportFamily {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PinningCertificate {
    pub points: Vec<TorusPoint>,
    pub residual_rank: usize,
    pub fiber_dim: usize,
    /// The unique parameter vector when `fiber_dim == 0`.
    pub solution: Option<Vec<CycElement>>,
}

/// Greedily picks corpus points whose membership conditions raise the rank
/// of the parameter system, skipping dependent and inconsistent ones.
pub fn pinning_points(fam: &SupportFamily, corpus: &[TorusPoint]) -> Result<PinningCertificate> {
    let k = fam.free_count();
    let mut ech = Echelon::new(k);
    let mut chosen = Vec::new();
    for p in corpus {
        if ech.rank() == k {
            break;
        }
        let x = p
            .exact_coords()
            .ok_or_else(|| Error::invalid(format!("pinning needs exact points, got {p}")))?;
        let (row, rhs) = fam.membership(&x)?;
        if ech.insert(row, rhs) == Insert::Independent {
            chosen.push(p.clone());
        }
    }
    let rank = ech.rank();
    Ok(PinningCertificate {
        points: chosen,
        residual_rank: rank,
        fiber_dim: k - rank,
        solution: (rank == k).then(|| ech.solve()),
    })
}

/// Whether some u-tuple of corpus points has a finite (here: single-point)
/// parameter fiber.
pub fn nondegenerate_power(fam: &SupportFamily, u: usize, corpus: &[TorusPoint]) -> Result<bool> {
    if u == 0 {
        return Err(Error::invalid("u must be at least 1"));
    }
    let cert = pinning_points(fam, corpus)?;
    Ok(cert.fiber_dim == 0 && cert.points.len() <= u)
}

#[derive(Debug, PartialEq, Eq)]
enum Insert {
    Independent,
    Dependent,
    Inconsistent,
}

/// Augmented row-echelon form over ℚ(ζ).
struct Echelon {
    cols: usize,
    /// (pivot column, row with 1 at pivot, rhs)
    rows: Vec<(usize, Vec<CycElement>, CycElement)>,
}

impl Echelon {
    fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn insert(&mut self, mut row: Vec<CycElement>, mut rhs: CycElement) -> Insert {
        for (p, r, b) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let f = row[*p].clone();
            for j in 0..self.cols {
                row[j] = &row[j] - &(&f * &r[j]);
            }
            rhs = &rhs - &(&f * b);
        }
        let Some(p) = (0..self.cols).find(|&j| !row[j].is_zero()) else {
            return if rhs.is_zero() {
                Insert::Dependent
            } else {
                Insert::Inconsistent
            };
        };
        let inv = row[p].inv().expect("nonzero pivot");
        let row: Vec<CycElement> = row.iter().map(|c| c * &inv).collect();
        let rhs = &rhs * &inv;
        // Keep the basis fully reduced.
        for (_, r, b) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for j in 0..self.cols {
                r[j] = &r[j] - &(&f * &row[j]);
            }
            *b = &*b - &(&f * &rhs);
        }
        self.rows.push((p, row, rhs));
        Insert::Independent
    }

    /// Solution of a full-rank system.
    fn solve(&self) -> Vec<CycElement> {
        let mut s = vec![CycElement::zero(); self.cols];
        for (p, _, b) in &self.rows {
            s[*p] = b.clone();
        }
        s
    }
}
