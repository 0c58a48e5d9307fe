//! Laurent polynomials on 𝐆ₘⁿ with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{CycElement, IntMatrix};

/// A hypersurface `Z(F) ⊂ 𝐆ₘⁿ`, `F = Σ c_v x^v`.
///
/// Terms are kept in lexicographic order of exponent vectors. When every
/// coefficient is rational the polynomial is scaled to coprime integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentHypersurface {
    n: usize,
    terms: Vec<(Vec<i64>, CycElement)>,
}

impl LaurentHypersurface {
    pub fn new(n: usize, terms: Vec<(Vec<i64>, CycElement)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("ambient dimension must be positive"));
        }
        let mut map: BTreeMap<Vec<i64>, CycElement> = BTreeMap::new();
        for (v, c) in terms {
            if v.len() != n {
                return Err(Error::invalid(format!(
                    "exponent {v:?} has length {}, expected {n}",
                    v.len()
                )));
            }
            if c.is_zero() {
                return Err(Error::invalid(format!("zero coefficient at {v:?}")));
            }
            if map.insert(v.clone(), c).is_some() {
                return Err(Error::invalid(format!("duplicate exponent {v:?}")));
            }
        }
        if map.len() < 2 {
            return Err(Error::invalid("a hypersurface needs at least two terms"));
        }
        let mut terms: Vec<_> = map.into_iter().collect();
        make_primitive(&mut terms);
        Ok(LaurentHypersurface { n, terms })
    }

    /// Builds from `(exponent, integer coefficient)` pairs.
    pub fn from_int_terms(n: usize, terms: &[(Vec<i64>, i64)]) -> Result<Self> {
        Self::new(
            n,
            terms
                .iter()
                .map(|(v, c)| (v.clone(), CycElement::from_int(*c)))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Vec<i64>, CycElement)] {
        &self.terms
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn coeff(&self, v: &[i64]) -> Option<&CycElement> {
        self.terms.iter().find(|(w, _)| w == v).map(|(_, c)| c)
    }

    pub fn is_binomial(&self) -> bool {
        self.terms.len() == 2
    }

    pub fn is_rational(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_rational())
    }

    /// Partial degrees `dᵢ = max vᵢ − min vᵢ` and their sum.
    pub fn multidegree(&self) -> (Vec<i64>, i64) {
        let d: Vec<i64> = (0..self.n)
            .map(|i| {
                let it = self.terms.iter().map(|(v, _)| v[i]);
                it.clone().max().unwrap() - it.min().unwrap()
            })
            .collect();
        let total = d.iter().sum();
        (d, total)
    }

    /// Rows `v − v₀` for every support vector `v ≠ v₀`, with `v₀` the
    /// lexicographically smallest exponent.
    pub fn difference_lattice(&self) -> IntMatrix {
        let v0 = &self.terms[0].0;
        let rows: Vec<Vec<i64>> = self.terms[1..]
            .iter()
            .map(|(v, _)| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        IntMatrix::from_rows(self.n, &rows)
    }

    /// Exact value at a point of the torus.
    pub fn eval(&self, x: &[CycElement]) -> Result<CycElement> {
        self.check_len(x.len())?;
        let mut acc = CycElement::zero();
        for (v, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.iter().zip(v) {
                if e != 0 {
                    t = &t * &xi.pow(e)?;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    pub fn eval_complex(&self, x: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(v, c)| {
                v.iter()
                    .zip(x)
                    .fold(c.to_complex(), |t, (&e, xi)| t * xi.powi(e as i32))
            })
            .sum()
    }

    /// Coefficients (constant term first) of the univariate polynomial in
    /// variable `var` obtained by fixing the other coordinates to `x`,
    /// shifted by the minimal exponent of `var` so that it is a polynomial.
    /// The entry `x[var]` is ignored.
    pub fn specialize(&self, var: usize, x: &[CycElement]) -> Result<Vec<CycElement>> {
        self.check_len(x.len())?;
        let lo = self.terms.iter().map(|(v, _)| v[var]).min().unwrap();
        let hi = self.terms.iter().map(|(v, _)| v[var]).max().unwrap();
        let mut out = vec![CycElement::zero(); (hi - lo) as usize + 1];
        for (v, c) in &self.terms {
            let mut t = c.clone();
            for (i, (xi, &e)) in x.iter().zip(v).enumerate() {
                if i != var && e != 0 {
                    t = &t * &xi.pow(e)?;
                }
            }
            let k = (v[var] - lo) as usize;
            out[k] = &out[k] + &t;
        }
        Ok(out)
    }

    /// Floating-point analogue of [`specialize`](Self::specialize).
    pub fn specialize_complex(&self, var: usize, x: &[Complex64]) -> Vec<Complex64> {
        let lo = self.terms.iter().map(|(v, _)| v[var]).min().unwrap();
        let hi = self.terms.iter().map(|(v, _)| v[var]).max().unwrap();
        let mut out = vec![Complex64::zero(); (hi - lo) as usize + 1];
        for (v, c) in &self.terms {
            let mut t = c.to_complex();
            for (i, (xi, &e)) in x.iter().zip(v).enumerate() {
                if i != var && e != 0 {
                    t *= xi.powi(e as i32);
                }
            }
            out[(v[var] - lo) as usize] += t;
        }
        out
    }

    /// `F(a·x)` for a torus point `a`.
    pub fn translate(&self, a: &[CycElement]) -> Result<LaurentHypersurface> {
        self.check_len(a.len())?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (v, c) in &self.terms {
            let mut t = c.clone();
            for (ai, &e) in a.iter().zip(v) {
                if e != 0 {
                    t = &t * &ai.pow(e)?;
                }
            }
            terms.push((v.clone(), t));
        }
        LaurentHypersurface::new(self.n, terms)
    }

    /// The same hypersurface with coordinates `i` and `j` exchanged.
    pub fn swap_vars(&self, i: usize, j: usize) -> LaurentHypersurface {
        let terms = self
            .terms
            .iter()
            .map(|(v, c)| {
                let mut w = v.clone();
                w.swap(i, j);
                (w, c.clone())
            })
            .collect();
        LaurentHypersurface::new(self.n, terms).expect("swap preserves validity")
    }

    /// True when `G = λ·F` for some nonzero scalar λ.
    pub fn is_scalar_multiple(&self, other: &LaurentHypersurface) -> bool {
        if self.n != other.n || self.terms.len() != other.terms.len() {
            return false;
        }
        let (v0, c0) = &self.terms[0];
        let (w0, d0) = &other.terms[0];
        if v0 != w0 {
            return false;
        }
        let lambda = d0 / c0;
        self.terms
            .iter()
            .zip(&other.terms)
            .all(|((v, c), (w, d))| v == w && (c * &lambda).eq_value(d))
    }

    fn check_len(&self, k: usize) -> Result<()> {
        if k != self.n {
            return Err(Error::invalid(format!(
                "point has {k} coordinates, hypersurface lives in dimension {}",
                self.n
            )));
        }
        Ok(())
    }

    /// Line-oriented document: `n <dim>` followed by `term e₁ … eₙ : coeff`.
    pub fn to_document(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (v, c) in &self.terms {
            let e: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("term {} : {c}\n", e.join(" ")));
        }
        s
    }

    pub fn from_document(s: &str) -> Result<Self> {
        let (n, terms) = parse_document(s)?;
        let terms = terms
            .into_iter()
            .map(|(v, c)| match c {
                Coeff::Value(c) => Ok((v, c)),
                Coeff::Free => Err(Error::Parse("free coefficient in a hypersurface".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, terms)
    }

    /// Parses an expression such as `x^2*y^3 - 5` with an explicit ambient
    /// dimension.
    pub fn parse_with_dim(s: &str, n: usize) -> Result<Self> {
        let (_, terms) = parse_expression(s, Some(n))?;
        Self::from_parsed(n, terms)
    }

    fn from_parsed(n: usize, terms: Vec<(Vec<i64>, Coeff)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<i64>, CycElement> = BTreeMap::new();
        for (v, c) in terms {
            let Coeff::Value(c) = c else {
                return Err(Error::Parse("free coefficient `?` in a hypersurface".into()));
            };
            let e = map.entry(v).or_insert_with(CycElement::zero);
            *e = &*e + &c;
        }
        let terms = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self::new(n, terms)
    }
}

/// Scales rational coefficient vectors to coprime integers.
fn make_primitive(terms: &mut [(Vec<i64>, CycElement)]) {
    let rats: Option<Vec<BigRational>> = terms.iter().map(|(_, c)| c.as_rational()).collect();
    let Some(rats) = rats else { return };
    let l = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| (r * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    for ((_, c), i) in terms.iter_mut().zip(ints) {
        *c = CycElement::from_bigint(i / &g);
    }
}

/// A parsed coefficient: a value or a free parameter `?`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Coeff {
    Value(CycElement),
    Free,
}

pub(crate) fn parse_document(s: &str) -> Result<(usize, Vec<(Vec<i64>, Coeff)>)> {
    let mut n = None;
    let mut terms = Vec::new();
    for (lineno, raw) in s.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: &str| Error::Parse(format!("line {}: {msg}: `{raw}`", lineno + 1));
        if let Some(rest) = line.strip_prefix("n ") {
            n = Some(rest.trim().parse::<usize>().map_err(|_| bad("bad dimension"))?);
        } else if let Some(rest) = line.strip_prefix("term ") {
            let dim = n.ok_or_else(|| bad("`term` before `n`"))?;
            let (e, c) = rest.split_once(':').ok_or_else(|| bad("missing `:`"))?;
            let v = e
                .split_whitespace()
                .map(|t| t.parse::<i64>().map_err(|_| bad("bad exponent")))
                .collect::<Result<Vec<_>>>()?;
            if v.len() != dim {
                return Err(bad("exponent length differs from n"));
            }
            let c = c.trim();
            let coeff = if c == "?" {
                Coeff::Free
            } else {
                Coeff::Value(c.parse().map_err(|_| bad("bad coefficient"))?)
            };
            terms.push((v, coeff));
        } else {
            return Err(bad("unknown directive"));
        }
    }
    let n = n.ok_or_else(|| Error::Parse("document has no `n` line".into()))?;
    Ok((n, terms))
}

/// Splits an expression at top-level `+`/`-` (not inside parentheses and
/// not an exponent sign), returning `(sign, term)` pairs.
fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut depth = 0i32;
    let mut prev: Option<char> = None;
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        let sign = (ch == '+' || ch == '-')
            && depth == 0
            && !matches!(prev, Some('^') | Some('*') | Some('/'));
        if !sign {
            cur.push(ch);
        } else if cur.trim().is_empty() {
            // Unary sign.
            neg ^= ch == '-';
        } else {
            out.push((neg, cur.trim().to_string()));
            cur.clear();
            neg = ch == '-';
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced parentheses in `{s}`")));
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("expression `{s}` ends with an operator")));
    }
    out.push((neg, cur.trim().to_string()));
    Ok(out)
}

fn var_index(name: &str) -> Option<(usize, bool)> {
    match name {
        "x" => Some((0, false)),
        "y" => Some((1, false)),
        "z" => Some((2, false)),
        "w" => Some((3, false)),
        _ => {
            let k: usize = name.strip_prefix('x')?.parse().ok()?;
            (k >= 1).then_some((k - 1, true))
        }
    }
}

/// Parses `c·x^a·y^b ± …`; `?` marks a free coefficient.
///
/// Variables are `x, y, z, w` or `x1, x2, …`; exponents may be negative.
/// Returns the inferred (or given) dimension and the terms.
pub(crate) fn parse_expression(s: &str, n: Option<usize>) -> Result<(usize, Vec<(Vec<i64>, Coeff)>)> {
    let bad = |msg: String| Error::Parse(format!("{msg} in `{s}`"));
    let mut raw: Vec<(BTreeMap<usize, i64>, Coeff)> = Vec::new();
    let mut indexed = None;
    let mut max_var = 0usize;
    for (neg, term) in split_terms(s)? {
        let mut exps: BTreeMap<usize, i64> = BTreeMap::new();
        let mut coeff = Some(CycElement::one());
        let mut free = false;
        for factor in split_factors(&term) {
            let f = factor.trim();
            if f == "?" {
                free = true;
                continue;
            }
            let (base, exp) = match f.split_once('^') {
                Some((b, e)) => {
                    let e = e.trim().trim_start_matches('(').trim_end_matches(')');
                    (b.trim(), Some(e.trim().parse::<i64>().map_err(|_| bad(format!("bad exponent `{e}`")))?))
                }
                None => (f, None),
            };
            if let Some((i, numbered)) = var_index(base) {
                if *indexed.get_or_insert(numbered) != numbered {
                    return Err(bad("mixed variable naming".into()));
                }
                *exps.entry(i).or_insert(0) += exp.unwrap_or(1);
                max_var = max_var.max(i + 1);
                continue;
            }
            let lit = f.strip_prefix('(').and_then(|r| r.strip_suffix(')')).unwrap_or(f);
            let c: CycElement = lit.parse().map_err(|_| bad(format!("bad factor `{f}`")))?;
            coeff = Some(&coeff.unwrap() * &c);
        }
        let c = if free {
            if !coeff.as_ref().is_some_and(|c| c.is_one()) {
                return Err(bad("a free coefficient `?` cannot be scaled".into()));
            }
            Coeff::Free
        } else {
            let c = coeff.unwrap();
            Coeff::Value(if neg { -&c } else { c })
        };
        raw.push((exps, c));
    }
    let n = match n {
        Some(n) if n < max_var => return Err(bad(format!("variable index exceeds dimension {n}"))),
        Some(n) => n,
        None => max_var.max(1),
    };
    let terms = raw
        .into_iter()
        .map(|(m, c)| {
            let mut v = vec![0i64; n];
            for (i, e) in m {
                v[i] = e;
            }
            (v, c)
        })
        .collect();
    Ok((n, terms))
}

fn split_factors(term: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in term.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if ch == '*' && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(ch);
        }
    }
    out.push(cur);
    out
}

fn monomial_string(v: &[i64]) -> String {
    let named = v.len() <= 4;
    let names = ["x", "y", "z", "w"];
    let mut parts = Vec::new();
    for (i, &e) in v.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let name = if named {
            names[i].to_string()
        } else {
            format!("x{}", i + 1)
        };
        parts.push(if e == 1 { name } else { format!("{name}^{e}") });
    }
    parts.join("*")
}

impl fmt::Display for LaurentHypersurface {
    /// Expression form, highest exponent first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (v, c)) in self.terms.iter().rev().enumerate() {
            let mono = monomial_string(v);
            let (neg, mag) = match c.as_rational() {
                Some(r) => (r.is_negative(), CycElement::from_rational(&r.abs())),
                None => (false, c.clone()),
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => format!("{}", display_coeff(&mag)),
                (false, true) => mono,
                (false, false) => format!("{}*{mono}", display_coeff(&mag)),
            };
            match (k, neg) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

fn display_coeff(c: &CycElement) -> String {
    if c.is_rational() && !c.to_string().contains('/') {
        c.to_string()
    } else {
        format!("({c})")
    }
}

impl fmt::Debug for LaurentHypersurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentHypersurface {
    type Err = Error;

    /// Accepts either a document (first directive `n …`) or an expression.
    fn from_str(s: &str) -> Result<Self> {
        let first = s.lines().map(|l| l.split('#').next().unwrap().trim()).find(|l| !l.is_empty());
        if first.is_some_and(|l| l.starts_with("n ")) {
            return Self::from_document(s);
        }
        let (n, terms) = parse_expression(s, None)?;
        Self::from_parsed(n, terms)
    }
}

impl Serialize for LaurentHypersurface {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentHypersurface {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> LaurentHypersurface {
        s.parse().unwrap()
    }

    #[test]
    fn multidegree_examples() {
        assert_eq!(f("x + y - 1").multidegree(), (vec![1, 1], 2));
        assert_eq!(f("x*y - 1").multidegree(), (vec![1, 1], 2));
        assert_eq!(f("x^2*y - 3").multidegree(), (vec![2, 1], 3));
    }

    #[test]
    fn difference_lattice_examples() {
        let rows = |s: &str| {
            let m = f(s).difference_lattice();
            let mut r: Vec<Vec<i64>> = (0..m.rows())
                .map(|i| m.row(i).iter().map(|c| c.try_into().unwrap()).collect())
                .collect();
            r.sort();
            (r, m.rank())
        };
        assert_eq!(rows("x + y - 1"), (vec![vec![0, 1], vec![1, 0]], 2));
        assert_eq!(rows("x*y - 1"), (vec![vec![1, 1]], 1));
        let (r, rank) = rows("x^2 - y^2");
        assert_eq!(rank, 1);
        assert!(r == vec![vec![2, -2]] || r == vec![vec![-2, 2]]);
    }

    #[test]
    fn parse_forms() {
        let a = f("x^2*y^3 - 5");
        assert_eq!(a.terms().len(), 2);
        assert_eq!(a.coeff(&[2, 3]), Some(&CycElement::from_int(1)));
        assert_eq!(a.coeff(&[0, 0]), Some(&CycElement::from_int(-5)));
        let b = f("x^-1 + y - 1");
        assert_eq!(b.coeff(&[-1, 0]), Some(&CycElement::one()));
        let c = f("-x + 2*y");
        assert_eq!(c.coeff(&[1, 0]), Some(&CycElement::from_int(-1)));
        let d = f("zeta(3)*x + y");
        assert_eq!(d.coeff(&[1, 0]), Some(&CycElement::root_of_unity(3, 1).unwrap()));
        let e = f("x1*x2*x3 - 1");
        assert_eq!(e.n(), 3);
        assert!("x + ".parse::<LaurentHypersurface>().is_err());
        assert!("x".parse::<LaurentHypersurface>().is_err());
        assert!("x - x + 1".parse::<LaurentHypersurface>().is_err());
    }

    #[test]
    fn rational_coefficients_are_made_primitive() {
        let a = f("1/2*x + 1/3*y - 1");
        assert_eq!(a.coeff(&[1, 0]), Some(&CycElement::from_int(3)));
        assert_eq!(a.coeff(&[0, 1]), Some(&CycElement::from_int(2)));
        assert_eq!(a.coeff(&[0, 0]), Some(&CycElement::from_int(-6)));
        let b = f("4*x - 6*y");
        assert_eq!(b.coeff(&[1, 0]), Some(&CycElement::from_int(2)));
    }

    #[test]
    fn display_and_document_round_trip() {
        for s in ["x + y - 1", "x^2*y^3 - 5", "x^2 - y^2", "y - x^2", "(zeta(5))*x + y - 1"] {
            let a = f(s);
            assert_eq!(f(&a.to_string()), a, "{s}");
            assert_eq!(LaurentHypersurface::from_document(&a.to_document()).unwrap(), a);
        }
        assert_eq!(f("x + y - 1").to_string(), "x + y - 1");
        assert_eq!(f("x^2*y^3 - 5").to_string(), "x^2*y^3 - 5");
    }

    #[test]
    fn evaluation_and_specialization() {
        let a = f("x + y - 1");
        let z6 = CycElement::root_of_unity(6, 1).unwrap();
        let z6i = CycElement::root_of_unity(6, -1).unwrap();
        assert!(a.eval(&[z6.clone(), z6i.clone()]).unwrap().is_zero());
        let sp = a.specialize(1, &[CycElement::from_int(3), CycElement::one()]).unwrap();
        assert_eq!(sp, vec![CycElement::from_int(2), CycElement::one()]);
        let v = a.eval_complex(&[z6.to_complex(), z6i.to_complex()]);
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn translation_and_scalar_multiples() {
        let a = f("x^2 - y^2");
        let t = a.translate(&[CycElement::from_int(1), CycElement::from_int(-1)]).unwrap();
        assert!(a.is_scalar_multiple(&t));
        let t2 = a.translate(&[CycElement::from_int(2), CycElement::one()]).unwrap();
        assert!(!a.is_scalar_multiple(&t2));
    }
}
