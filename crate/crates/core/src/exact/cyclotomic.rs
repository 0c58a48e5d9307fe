//! Cyclotomic polynomials and exact arithmetic in ℚ(ζ_m).

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{big_to_f64, IntPoly};
use crate::error::{Error, Result};

/// Largest conductor accepted by [`cyclotomic_poly`].
pub const MAX_CONDUCTOR: usize = 1 << 20;

/// Prime factorization by trial division, as `(p, e)` pairs in increasing order.
pub fn factorize_small(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: usize) -> usize {
    factorize_small(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn mobius(n: usize) -> i32 {
    let f = factorize_small(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Units of ℤ/m in increasing order (`{0}` is treated as `{1}` for m = 1).
pub fn units_mod(m: usize) -> Vec<usize> {
    if m == 1 {
        return vec![1];
    }
    (1..m).filter(|a| a.gcd(&m) == 1).collect()
}

static CYCLOTOMIC_CACHE: Lazy<RwLock<HashMap<usize, Arc<IntPoly>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// The m-th cyclotomic polynomial Φ_m.
///
/// `x^m − 1` factors as `∏_{d|m} Φ_d`; Möbius inversion turns the exact
/// divisions into a product and quotient of sparse binomials `x^d − 1`.
pub fn cyclotomic_poly(m: usize) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::invalid("cyclotomic_poly: m must be positive"));
    }
    if m > MAX_CONDUCTOR {
        return Err(Error::Capability(format!(
            "cyclotomic_poly: conductor {m} exceeds cap {MAX_CONDUCTOR}"
        )));
    }
    Ok((*phi_poly(m)).clone())
}

/// Cached Φ_m for internal use; `m` must already be validated.
pub(crate) fn phi_poly(m: usize) -> Arc<IntPoly> {
    if let Some(p) = CYCLOTOMIC_CACHE.read().unwrap().get(&m) {
        return p.clone();
    }
    let p = Arc::new(compute_cyclotomic(m));
    CYCLOTOMIC_CACHE
        .write()
        .unwrap()
        .entry(m)
        .or_insert(p)
        .clone()
}

fn compute_cyclotomic(m: usize) -> IntPoly {
    let mut num = IntPoly::one();
    let mut dens = Vec::new();
    for d in divisors(m) {
        match mobius(m / d) {
            1 => num = mul_binomial(&num, d),
            -1 => dens.push(d),
            _ => {}
        }
    }
    for d in dens {
        let (q, r) = num.div_rem_monic(&IntPoly::x_pow_minus_one(d));
        debug_assert!(r.is_zero());
        num = q;
    }
    num
}

fn mul_binomial(p: &IntPoly, d: usize) -> IntPoly {
    // p · (x^d − 1)
    let c = p.coeffs();
    let mut v = vec![BigInt::zero(); c.len() + d];
    for (i, a) in c.iter().enumerate() {
        v[i + d] += a;
        v[i] -= a;
    }
    IntPoly::new(v)
}

/// Exact element `num(ζ_m) / den` of the cyclotomic field ℚ(ζ_m).
///
/// Canonical form: numerator reduced modulo Φ_m, `gcd(content, den) = 1`,
/// `den > 0`. Conductors `m ≡ 2 (mod 4)` are rewritten to `m/2`, and rational
/// values always carry conductor 1, so equal values built in the same
/// conductor compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycElement {
    m: usize,
    num: IntPoly,
    den: BigInt,
}

/// Canonical element equal to `p(ζ_m)/den`.
pub fn cyc_reduce(m: usize, p: &IntPoly, den: &BigInt) -> Result<CycElement> {
    CycElement::new(m, p.clone(), den.clone())
}

impl CycElement {
    pub fn new(m: usize, num: IntPoly, den: BigInt) -> Result<Self> {
        if m == 0 || m > MAX_CONDUCTOR {
            return Err(Error::invalid(format!("conductor {m} out of range")));
        }
        if den.is_zero() {
            return Err(Error::invalid("zero denominator"));
        }
        Ok(Self::from_parts(m, num, den))
    }

    /// Internal constructor; `m` and `den` already validated.
    fn from_parts(m: usize, num: IntPoly, den: BigInt) -> Self {
        let num = reduce_mod_x_m(&num, m).rem_monic(&phi_poly(m));
        let mut e = CycElement { m, num, den };
        e.normalize();
        e
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -self.den.clone();
            self.num = -&self.num;
        }
        if self.num.is_zero() {
            self.m = 1;
            self.den = BigInt::one();
            return;
        }
        if self.m % 4 == 2 {
            // ζ_{2k} = −ζ_k^{(k+1)/2} for odd k.
            let k = self.m / 2;
            let e = (k + 1) / 2;
            let sub = IntPoly::monomial(BigInt::from(-1), e);
            self.num = compose_mod(&self.num, &sub, k);
            self.m = k;
        }
        if self.num.deg() == 0 {
            self.m = 1;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() {
            self.num = IntPoly::new(self.num.coeffs().iter().map(|c| c / &g).collect());
            self.den /= &g;
        }
        for (p, _) in factorize_small(self.m) {
            if let Some(y) = self.descend(p) {
                *self = y;
                return;
            }
        }
    }

    /// The same value in ℚ(ζ_{m/p}) if it lies there.
    ///
    /// The candidate is the relative trace divided by the degree
    /// `e = [ℚ(ζ_m) : ℚ(ζ_{m/p})]`; it is accepted only if it lifts back to
    /// `self` exactly. With `ζ_m = ζ_p^u ζ_d^v` (`ud + vp = 1`), the trace of
    /// `ζ_m^j` is `(p−1)ζ_d^{jv}` or `−ζ_d^{jv}` when p ∤ m/p, and `p·ζ_d^{j/p}`
    /// or 0 when p | m/p.
    fn descend(&self, p: usize) -> Option<CycElement> {
        let m = self.m;
        let d = m / p;
        let squared = d % p == 0;
        let e = if squared { p } else { p - 1 };
        let mut t = vec![BigInt::zero(); d.max(1)];
        if squared {
            for (j, c) in self.num.coeffs().iter().enumerate() {
                if j % p == 0 {
                    t[j / p] += c * BigInt::from(p);
                }
            }
        } else {
            let v = if d == 1 { 0 } else { inverse_mod(p % d, d) };
            for (j, c) in self.num.coeffs().iter().enumerate() {
                let w = if j % p == 0 { BigInt::from(p - 1) } else { BigInt::from(-1) };
                t[(j * v) % d.max(1)] += c * w;
            }
        }
        let num = reduce_mod_x_m(&IntPoly::new(t), d).rem_monic(&phi_poly(d));
        let mut y = CycElement {
            m: d,
            num,
            den: &self.den * BigInt::from(e),
        };
        y.normalize_keep_conductor();
        if y.den.is_negative() {
            y.den = -y.den.clone();
            y.num = -&y.num;
        }
        if y.lift(m) != *self {
            return None;
        }
        y.normalize();
        Some(y)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_parts(1, IntPoly::constant(BigInt::from(c)), BigInt::one())
    }

    pub fn from_bigint(c: BigInt) -> Self {
        Self::from_parts(1, IntPoly::constant(c), BigInt::one())
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts(1, IntPoly::constant(r.numer().clone()), r.denom().clone())
    }

    pub fn from_ratio(p: i64, q: i64) -> Result<Self> {
        Self::new(1, IntPoly::constant(BigInt::from(p)), BigInt::from(q))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// `ζ_n^k` with `ζ_n = e^{2πi/n}`.
    pub fn root_of_unity(n: usize, k: i64) -> Result<Self> {
        if n == 0 || n > MAX_CONDUCTOR {
            return Err(Error::invalid(format!("root of unity order {n} out of range")));
        }
        let e = k.rem_euclid(n as i64) as usize;
        Ok(Self::from_parts(n, IntPoly::monomial(BigInt::one(), e), BigInt::one()))
    }

    pub fn conductor(&self) -> usize {
        self.m
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.m == 1 && self.num.is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.m == 1
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num.coeff(0), self.den.clone()))
    }

    /// Re-expresses the element in ℚ(ζ_big); `m | big` is required.
    pub fn lift(&self, big: usize) -> Self {
        assert!(big % self.m == 0, "lift: {} does not divide {big}", self.m);
        if big == self.m {
            return self.clone();
        }
        let num = self.num.inflate(big / self.m);
        let mut e = CycElement {
            m: big,
            num: reduce_mod_x_m(&num, big).rem_monic(&phi_poly(big)),
            den: self.den.clone(),
        };
        e.normalize_keep_conductor();
        e
    }

    /// gcd/sign normalization without conductor rewriting; used for elements
    /// that must stay in a prescribed representation (Galois orbits, lifts).
    fn normalize_keep_conductor(&mut self) {
        if self.num.is_zero() {
            self.den = BigInt::one();
            return;
        }
        let g = self.num.content().gcd(&self.den);
        if !g.is_one() {
            self.num = IntPoly::new(self.num.coeffs().iter().map(|c| c / &g).collect());
            self.den /= &g;
        }
    }

    fn common(&self, other: &Self) -> (Self, Self, usize) {
        let l = self.m.lcm(&other.m);
        (self.lift(l), other.lift(l), l)
    }

    /// Value equality, independent of representation conductor.
    pub fn eq_value(&self, other: &Self) -> bool {
        if self.m == other.m {
            return self == other;
        }
        let (a, b, _) = self.common(other);
        a.num == b.num && a.den == b.den
    }

    /// Galois action `σ_a : ζ_m ↦ ζ_m^a`; `gcd(a, m) = 1` is required.
    pub fn galois(&self, a: usize) -> Self {
        assert!(a.gcd(&self.m) == 1, "galois: {a} not a unit mod {}", self.m);
        if self.m == 1 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); self.m];
        for (i, c) in self.num.coeffs().iter().enumerate() {
            v[(i * a) % self.m] += c;
        }
        let num = IntPoly::new(v).rem_monic(&phi_poly(self.m));
        let mut e = CycElement {
            m: self.m,
            num,
            den: self.den.clone(),
        };
        e.normalize_keep_conductor();
        e
    }

    /// Complex conjugate (σ_{−1}).
    pub fn conj(&self) -> Self {
        if self.m == 1 {
            return self.clone();
        }
        self.galois(self.m - 1)
    }

    /// Image under the principal embedding `ζ_m ↦ e^{2πi/m}`.
    pub fn to_complex(&self) -> Complex64 {
        let m = self.m as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * (j as f64) / m);
            acc += z * big_to_f64(c);
        }
        acc / big_to_f64(&self.den)
    }

    /// Image under `σ_a` followed by the principal embedding.
    pub fn embed(&self, a: usize) -> Complex64 {
        let m = self.m as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, c) in self.num.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = (j * a) % self.m;
            let z = Complex64::from_polar(1.0, std::f64::consts::TAU * (e as f64) / m);
            acc += z * big_to_f64(c);
        }
        acc / big_to_f64(&self.den)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        if self.m == 1 {
            let c = self.num.coeff(0);
            return Self::new(1, IntPoly::constant(self.den.clone()), c);
        }
        // Extended Euclid in ℚ[x]: s·num ≡ 1 (mod Φ_m).
        let phi = phi_poly(self.m);
        let s = qpoly::inverse_mod(&qpoly::from_int(&self.num), &qpoly::from_int(&phi));
        let (snum, sden) = qpoly::clear_denominators(&s);
        Self::new(self.m, snum.scale(&self.den), sden)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// `(N, k)` with `self = ζ_N^k`, `gcd(k, N) = 1`, `0 < k < N`, for
    /// nonrational roots of unity.
    pub fn as_root_of_unity(&self) -> Option<(usize, usize)> {
        if self.m == 1 {
            return None;
        }
        self.unity_exponent()
    }

    /// Order as a root of unity, `None` if the element is not one.
    pub fn root_of_unity_order(&self) -> Option<usize> {
        self.unity_exponent().map(|(n, _)| n)
    }

    /// The roots of unity in ℚ(ζ_m) are exactly μ_{lcm(2,m)}: the exponent
    /// is read off the argument and confirmed by exact (canonical) equality.
    fn unity_exponent(&self) -> Option<(usize, usize)> {
        if self.is_zero() || !self.den.is_one() {
            return None;
        }
        let z = self.to_complex();
        if (z.norm() - 1.0).abs() > 1e-6 {
            return None;
        }
        let w = self.m.lcm(&2);
        let turns = z.arg() / std::f64::consts::TAU;
        let k = ((turns * w as f64).round() as i64).rem_euclid(w as i64) as usize;
        if CycElement::root_of_unity(w, k as i64).ok()? != *self {
            return None;
        }
        let g = k.gcd(&w);
        Some((w / g, k / g))
    }
}

/// Folds exponents modulo m using `x^m = 1`.
fn reduce_mod_x_m(p: &IntPoly, m: usize) -> IntPoly {
    if p.coeffs().len() <= m {
        return p.clone();
    }
    let mut v = vec![BigInt::zero(); m];
    for (i, c) in p.coeffs().iter().enumerate() {
        v[i % m] += c;
    }
    IntPoly::new(v)
}

/// `a⁻¹ mod n` for `gcd(a, n) = 1`, `n ≥ 2`.
fn inverse_mod(a: usize, n: usize) -> usize {
    let e = (a as i64).extended_gcd(&(n as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(n as i64) as usize
}

/// `p(q(x)) mod Φ_m`.
fn compose_mod(p: &IntPoly, q: &IntPoly, m: usize) -> IntPoly {
    let phi = phi_poly(m);
    let q = reduce_mod_x_m(q, m).rem_monic(&phi);
    let mut acc = IntPoly::zero();
    for c in p.coeffs().iter().rev() {
        acc = (&(&acc * &q) + &IntPoly::constant(c.clone())).rem_monic(&phi);
    }
    acc
}

fn binop(
    a: &CycElement,
    b: &CycElement,
    f: impl Fn(&IntPoly, &BigInt, &IntPoly, &BigInt) -> (IntPoly, BigInt),
) -> CycElement {
    let (a, b, l) = a.common(b);
    let (num, den) = f(&a.num, &a.den, &b.num, &b.den);
    CycElement::from_parts(l, num, den)
}

impl Add for &CycElement {
    type Output = CycElement;
    fn add(self, rhs: &CycElement) -> CycElement {
        binop(self, rhs, |an, ad, bn, bd| {
            (&an.scale(bd) + &bn.scale(ad), ad * bd)
        })
    }
}

impl Sub for &CycElement {
    type Output = CycElement;
    fn sub(self, rhs: &CycElement) -> CycElement {
        binop(self, rhs, |an, ad, bn, bd| {
            (&an.scale(bd) - &bn.scale(ad), ad * bd)
        })
    }
}

impl Mul for &CycElement {
    type Output = CycElement;
    fn mul(self, rhs: &CycElement) -> CycElement {
        binop(self, rhs, |an, ad, bn, bd| (an * bn, ad * bd))
    }
}

impl Div for &CycElement {
    type Output = CycElement;
    /// Panics on division by zero; use [`CycElement::inv`] for a fallible form.
    fn div(self, rhs: &CycElement) -> CycElement {
        self * &rhs.inv().expect("division by zero in ℚ(ζ_m)")
    }
}

impl Neg for &CycElement {
    type Output = CycElement;
    fn neg(self) -> CycElement {
        CycElement {
            m: self.m,
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycElement {
            type Output = CycElement;
            fn $m(self, rhs: CycElement) -> CycElement {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for CycElement {
    /// Rationals print as `p` or `p/q`; other elements as `cyc(m;c0,c1,...)`
    /// with an optional `/den` suffix.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.num.coeff(0))?;
        } else if let Some((n, k)) = self.as_root_of_unity() {
            return match k {
                1 => write!(f, "zeta({n})"),
                _ => write!(f, "zeta({n})^{k}"),
            };
        } else {
            write!(f, "cyc({};", self.m)?;
            for (i, c) in self.num.coeffs().iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, ")")?;
        }
        if !self.den.is_one() {
            write!(f, "/{}", self.den)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CycElement {
    type Err = Error;

    /// Accepts `p`, `p/q`, `cyc(m;c0,...)[/q]`, `zeta(m)`, `zeta(m)^k`,
    /// with an optional leading `-` on the `zeta` forms.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse cyclotomic element `{s}`"));
        let int = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix("cyc(") {
            let close = rest.find(')').ok_or_else(bad)?;
            let inner = &rest[..close];
            let tail = rest[close + 1..].trim();
            let (ms, cs) = inner.split_once(';').ok_or_else(bad)?;
            let m: usize = ms.trim().parse().map_err(|_| bad())?;
            let coeffs = cs
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(int)
                .collect::<Result<Vec<_>>>()?;
            let den = match tail.strip_prefix('/') {
                Some(d) => int(d)?,
                None if tail.is_empty() => BigInt::one(),
                None => return Err(bad()),
            };
            return CycElement::new(m, IntPoly::new(coeffs), den);
        }
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) if b.trim_start().starts_with("zeta") => (true, b.trim_start()),
            _ => (false, s),
        };
        if let Some(rest) = body.strip_prefix("zeta(") {
            let close = rest.find(')').ok_or_else(bad)?;
            let n: usize = rest[..close].trim().parse().map_err(|_| bad())?;
            let tail = rest[close + 1..].trim();
            let k: i64 = match tail.strip_prefix('^') {
                Some(k) => k.trim().parse().map_err(|_| bad())?,
                None if tail.is_empty() => 1,
                None => return Err(bad()),
            };
            let z = CycElement::root_of_unity(n, k)?;
            return Ok(if neg { -&z } else { z });
        }
        match s.split_once('/') {
            Some((p, q)) => CycElement::new(1, IntPoly::constant(int(p)?), int(q)?),
            None => Ok(CycElement::from_bigint(int(s)?)),
        }
    }
}

impl Serialize for CycElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Minimal dense ℚ[x] helpers for inversion modulo Φ_m.
pub(crate) mod qpoly {
    use super::*;

    pub type QPoly = Vec<BigRational>;

    pub fn from_int(p: &IntPoly) -> QPoly {
        p.coeffs().iter().map(|c| BigRational::from(c.clone())).collect()
    }

    fn trim(p: &mut QPoly) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    fn sub_scaled_shift(a: &mut QPoly, b: &QPoly, c: &BigRational, shift: usize) {
        if a.len() < b.len() + shift {
            a.resize(b.len() + shift, BigRational::zero());
        }
        for (i, bc) in b.iter().enumerate() {
            a[i + shift] -= c * bc;
        }
        trim(a);
    }

    pub fn div_rem(a: &QPoly, b: &QPoly) -> (QPoly, QPoly) {
        let mut r = a.clone();
        trim(&mut r);
        let db = b.len() - 1;
        let lb = b[db].clone();
        let mut q = vec![BigRational::zero(); r.len().saturating_sub(db).max(1)];
        while r.len() > db && !r.is_empty() {
            let shift = r.len() - 1 - db;
            let c = r.last().unwrap() / &lb;
            q[shift] = c.clone();
            sub_scaled_shift(&mut r, b, &c, shift);
        }
        trim(&mut q);
        (q, r)
    }

    fn mul(a: &QPoly, b: &QPoly) -> QPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        trim(&mut v);
        v
    }

    fn sub(a: &QPoly, b: &QPoly) -> QPoly {
        let n = a.len().max(b.len());
        let mut v: QPoly = (0..n)
            .map(|i| {
                a.get(i).cloned().unwrap_or_else(BigRational::zero)
                    - b.get(i).cloned().unwrap_or_else(BigRational::zero)
            })
            .collect();
        trim(&mut v);
        v
    }

    /// `s` with `s·a ≡ 1 (mod m)`; `a` must be coprime to `m`.
    pub fn inverse_mod(a: &QPoly, m: &QPoly) -> QPoly {
        let (mut r0, mut r1) = (m.clone(), div_rem(a, m).1);
        let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = div_rem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        assert!(!r1.is_empty(), "inverse_mod: not coprime");
        let c = r1[0].clone();
        let s: QPoly = s1.iter().map(|x| x / &c).collect();
        div_rem(&s, m).1
    }

    /// `p = num / den` with integer `num` and positive `den`.
    pub fn clear_denominators(p: &QPoly) -> (IntPoly, BigInt) {
        let den = p
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = p
            .iter()
            .map(|c| (c * BigRational::from(den.clone())).to_integer())
            .collect();
        (IntPoly::new(num), den)
    }
}
