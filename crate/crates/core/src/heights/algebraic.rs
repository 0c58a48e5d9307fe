//! Algebraic numbers by minimal polynomial plus isolating disk; Mahler
//! measure and the absolute logarithmic Weil height.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::roots::{complex_roots, RootEnclosure};
use crate::error::{Error, Result};
use crate::exact::cyclotomic::{euler_phi, phi_poly, units_mod};
use crate::exact::matrix::invariant_factors;
use crate::exact::{factor_squarefree_rational, CycElement, IntMatrix, IntPoly};

/// Root radius used for Mahler measures; small enough that the summed
/// `log⁺` error stays far below the 1e-10 budget at degree ≤ 50.
const MAHLER_EPS: f64 = 1e-13;
const MAHLER_TOL: f64 = 1e-10;

/// True iff `p` is ± a product of cyclotomic polynomials (exact test).
pub fn is_cyclotomic_product(p: &IntPoly) -> bool {
    if p.is_zero() || p.deg() == 0 {
        return false;
    }
    if !p.lead().abs().is_one() || !p.coeff(0).abs().is_one() {
        return false;
    }
    let mut rest = p.clone();
    let n = p.deg();
    // φ(d) ≥ √(d/2), so only d ≤ 2n² can contribute a factor of degree ≤ n.
    for d in 1..=2 * n * n {
        if rest.deg() == 0 {
            break;
        }
        if euler_phi(d) > rest.deg() {
            continue;
        }
        let phi = phi_poly(d);
        loop {
            let (q, r) = rest.div_rem_monic(&phi);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest.deg() == 0
}

/// `log M(p)` with absolute error ≤ 1e-10.
pub fn log_mahler_measure(p: &IntPoly) -> Result<f64> {
    if p.is_zero() {
        return Err(Error::invalid("Mahler measure of the zero polynomial"));
    }
    let log_lead = super::log_abs_big(&p.lead());
    if p.deg() == 0 {
        return Ok(log_lead);
    }
    let core = p.shift_down(p.x_valuation());
    if core.deg() > 0 && is_cyclotomic_product(&core) {
        // Kronecker: all roots on the unit circle, log⁺ vanishes exactly.
        return Ok(log_lead);
    }
    let roots = complex_roots(p, MAHLER_EPS)?;
    Ok(log_lead + sum_log_plus(&roots)?)
}

/// Mahler measure `M(p) = |lead| Π max(1, |root|)`, relative error ≤ 1e-10.
pub fn mahler_measure(p: &IntPoly) -> Result<f64> {
    Ok(log_mahler_measure(p)?.exp())
}

fn sum_log_plus(roots: &[RootEnclosure]) -> Result<f64> {
    let mut acc = 0.0;
    let mut err = 0.0;
    for r in roots {
        let a = r.center.norm();
        if a + r.radius <= 1.0 {
            continue;
        }
        acc += r.multiplicity as f64 * a.max(1.0).ln();
        // log⁺ is 1-Lipschitz in |z|.
        err += r.multiplicity as f64 * r.radius;
    }
    if err > MAHLER_TOL {
        return Err(Error::Numeric {
            msg: "Mahler measure error budget exceeded".into(),
            achieved: err,
        });
    }
    Ok(acc)
}

/// An algebraic number: an irreducible primitive integer polynomial and a
/// disk isolating one of its roots.
///
/// The disk radius is at most a quarter of the distance to the nearest
/// other root, so overlapping disks of the same polynomial mean equal numbers.
#[derive(Clone)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    center: Complex64,
    radius: f64,
}

impl AlgebraicNumber {
    pub fn from_rational(r: &BigRational) -> Self {
        let minpoly = IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).primitive_part();
        let c = r.to_f64().unwrap_or(f64::NAN);
        AlgebraicNumber {
            minpoly,
            center: Complex64::new(c, 0.0),
            radius: c.abs() * f64::EPSILON,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    /// The root of `minpoly` nearest to `approx`.
    ///
    /// `minpoly` must be irreducible (checked by factoring, so its degree is
    /// bounded by the factorization cap), and `approx` must be closer to one
    /// root than to any other by a factor of two.
    pub fn from_minpoly(minpoly: &IntPoly, approx: Complex64) -> Result<Self> {
        let f = factor_squarefree_rational(minpoly)?;
        if f.len() != 1 || f[0].1 != 1 {
            return Err(Error::invalid(format!("{minpoly} is not irreducible")));
        }
        Self::select_root(f[0].0.clone(), approx)
    }

    /// The complex value of a cyclotomic element under the principal embedding.
    pub fn from_cyc(c: &CycElement) -> Result<Self> {
        Self::select_root(minpoly_cyc(c)?, c.to_complex())
    }

    /// All roots of an irreducible polynomial, in isolation order.
    pub fn conjugates_of(minpoly: &IntPoly) -> Result<Vec<Self>> {
        let f = factor_squarefree_rational(minpoly)?;
        if f.len() != 1 || f[0].1 != 1 {
            return Err(Error::invalid(format!("{minpoly} is not irreducible")));
        }
        let g = f[0].0.clone();
        Ok(isolated(&g)?
            .into_iter()
            .map(|(center, radius)| AlgebraicNumber {
                minpoly: g.clone(),
                center,
                radius,
            })
            .collect())
    }

    /// Every root of `p` (any nonzero polynomial), grouped by irreducible factor.
    pub fn roots_of(p: &IntPoly) -> Result<Vec<Self>> {
        let mut out = Vec::new();
        for (g, _) in factor_squarefree_rational(p)? {
            for (center, radius) in isolated(&g)? {
                out.push(AlgebraicNumber {
                    minpoly: g.clone(),
                    center,
                    radius,
                });
            }
        }
        Ok(out)
    }

    /// `minpoly` is trusted to be irreducible and primitive.
    fn select_root(minpoly: IntPoly, approx: Complex64) -> Result<Self> {
        let mut minpoly = minpoly;
        if minpoly.lead().is_negative() {
            minpoly = -&minpoly;
        }
        let roots = isolated(&minpoly)?;
        let dist: Vec<f64> = roots.iter().map(|(c, _)| (c - approx).norm()).collect();
        let best = (0..roots.len())
            .min_by(|&a, &b| dist[a].total_cmp(&dist[b]))
            .expect("nonconstant minimal polynomial");
        let runner_up = (0..roots.len())
            .filter(|&i| i != best)
            .map(|i| dist[i])
            .fold(f64::INFINITY, f64::min);
        if !(2.0 * dist[best] < runner_up) {
            return Err(Error::Numeric {
                msg: format!("approximation {approx} does not isolate a root of {minpoly}"),
                achieved: dist[best],
            });
        }
        let (center, radius) = roots[best];
        Ok(AlgebraicNumber {
            minpoly,
            center,
            radius,
        })
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    pub fn approx(&self) -> Complex64 {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn is_zero(&self) -> bool {
        self.minpoly.deg() == 1 && self.minpoly.coeff(0).is_zero()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        (self.degree() == 1).then(|| BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    pub fn is_root_of_unity(&self) -> bool {
        is_cyclotomic_product(&self.minpoly)
    }

    /// The same number in exact cyclotomic form, when it is rational or a
    /// root of unity.
    pub fn to_cyc(&self) -> Option<CycElement> {
        if let Some(r) = self.as_rational() {
            return Some(CycElement::from_rational(&r));
        }
        if !self.is_root_of_unity() {
            return None;
        }
        let n = self.degree();
        // The minimal polynomial is Φ_N for some N with φ(N) = n ≤ N ≤ 2n².
        let big_n = (1..=2 * n * n)
            .find(|&d| euler_phi(d) == n && *phi_poly(d) == self.minpoly)?;
        let t = self.center.arg() / std::f64::consts::TAU * big_n as f64;
        let j = t.round().rem_euclid(big_n as f64) as i64;
        CycElement::root_of_unity(big_n, j).ok()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::invalid("inverse of zero"));
        }
        let rev = self.minpoly.reversed().primitive_part();
        Self::select_root(rev, self.center.inv())
    }

    /// `a^k`, exactly: the minimal polynomial of `a^k` is the radical of the
    /// characteristic polynomial of the k-th power of the companion matrix.
    pub fn pow(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(Self::from_int(1));
        }
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if self.degree() == 1 {
            let r = self.as_rational().expect("degree one");
            return Ok(Self::from_rational(&num_traits::pow(r, k as usize)));
        }
        let c = companion(&self.minpoly);
        let ck = mat_pow(&c, k as u64);
        let g = radical(&charpoly_int(&ck));
        Self::select_root(g, self.center.powi(k as i32))
    }

    /// `a·b`, via the characteristic polynomial of the Kronecker product of
    /// companion matrices followed by factorization.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if let (Some(x), Some(y)) = (self.as_rational(), other.as_rational()) {
            return Ok(Self::from_rational(&(x * y)));
        }
        let k = kron(&companion(&self.minpoly), &companion(&other.minpoly));
        let chi = charpoly_int(&k);
        let target = self.center * other.center;
        let mut best: Option<(f64, IntPoly)> = None;
        for (g, _) in factor_squarefree_rational(&chi)? {
            let res = relative_residual(&g, target);
            if best.as_ref().is_none_or(|(b, _)| res < *b) {
                best = Some((res, g));
            }
        }
        let (_, g) = best.expect("nonconstant characteristic polynomial");
        Self::select_root(g, target)
    }

    /// Images under every embedding, one per root of the minimal polynomial.
    pub fn conjugate_values(&self) -> Result<Vec<Complex64>> {
        Ok(isolated(&self.minpoly)?.into_iter().map(|(c, _)| c).collect())
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
            && (self.center - other.center).norm() <= self.radius + other.radius
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicNumber {
    /// `alg(c0,c1,...;re,im)`: coefficients constant term first, then an
    /// approximation selecting the root.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let cs: Vec<String> = self.minpoly.coeffs().iter().map(|c| c.to_string()).collect();
        write!(
            f,
            "alg({};{:e},{:e})",
            cs.join(","),
            self.center.re,
            self.center.im
        )
    }
}

impl FromStr for AlgebraicNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse algebraic number `{s}`"));
        if let Some(inner) = s.strip_prefix("alg(").and_then(|r| r.strip_suffix(')')) {
            let (cs, z) = inner.split_once(';').ok_or_else(bad)?;
            let coeffs = cs
                .split(',')
                .map(|t| t.trim().parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            let (re, im) = z.split_once(',').ok_or_else(bad)?;
            let re: f64 = re.trim().parse().map_err(|_| bad())?;
            let im: f64 = im.trim().parse().map_err(|_| bad())?;
            return Self::from_minpoly(&IntPoly::new(coeffs), Complex64::new(re, im));
        }
        let c: CycElement = s.parse()?;
        let r = c.as_rational().ok_or_else(bad)?;
        Ok(Self::from_rational(&r))
    }
}

impl Serialize for AlgebraicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AlgebraicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Isolating disks with radius at most a quarter of the root separation.
fn isolated(g: &IntPoly) -> Result<Vec<(Complex64, f64)>> {
    let mut eps = 1e-12;
    loop {
        let roots = complex_roots(g, eps)?;
        let pts: Vec<(Complex64, f64)> = roots.iter().map(|r| (r.center, r.radius)).collect();
        let mut sep = f64::INFINITY;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                sep = sep.min((pts[i].0 - pts[j].0).norm());
            }
        }
        let worst = pts.iter().map(|p| p.1).fold(0.0, f64::max);
        if 4.0 * worst <= sep {
            return Ok(pts);
        }
        if eps < 1e-28 {
            return Err(Error::Numeric {
                msg: format!("roots of {g} too close to isolate"),
                achieved: worst,
            });
        }
        eps = (sep / 8.0).min(eps * 1e-4);
    }
}

fn relative_residual(g: &IntPoly, z: Complex64) -> f64 {
    let v = g.eval_complex(z).norm();
    let az = z.norm();
    let mag = g
        .coeffs()
        .iter()
        .rev()
        .fold(0.0, |m, c| m * az + super::float_ratio(&c.abs(), &BigInt::one()));
    v / mag.max(f64::MIN_POSITIVE)
}

type QMat = Vec<Vec<BigRational>>;

/// Companion matrix of the monic polynomial `f / lead(f)`.
fn companion(f: &IntPoly) -> QMat {
    let n = f.deg();
    let lc = f.lead();
    let mut c = vec![vec![BigRational::zero(); n]; n];
    for i in 1..n {
        c[i][i - 1] = BigRational::one();
    }
    for (i, row) in c.iter_mut().enumerate() {
        row[n - 1] = BigRational::new(-f.coeff(i), lc.clone());
    }
    c
}

fn mat_mul(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![BigRational::zero(); m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

fn mat_pow(a: &QMat, mut k: u64) -> QMat {
    let n = a.len();
    let mut acc: QMat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    let mut base = a.clone();
    while k > 0 {
        if k & 1 == 1 {
            acc = mat_mul(&acc, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mat_mul(&base, &base);
        }
    }
    acc
}

fn kron(a: &QMat, b: &QMat) -> QMat {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![BigRational::zero(); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            if a[i][j].is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

/// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier, scaled to a
/// primitive integer polynomial.
fn charpoly_int(a: &QMat) -> IntPoly {
    let n = a.len();
    // c[k] is the coefficient of x^(n−k).
    let mut c = vec![BigRational::one()];
    let mut m: QMat = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A·M_{k−1} + c_{k−1} I
        let mut next = mat_mul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &c[k - 1];
        }
        m = next;
        let am = mat_mul(a, &m);
        let tr = (0..n).fold(BigRational::zero(), |t, i| t + &am[i][i]);
        c.push(-tr / BigRational::from_integer(BigInt::from(k)));
    }
    let coeffs: Vec<BigRational> = c.into_iter().rev().collect();
    rational_to_primitive(&coeffs)
}

fn rational_to_primitive(c: &[BigRational]) -> IntPoly {
    use num_integer::Integer;
    let l = c.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    IntPoly::new(c.iter().map(|r| (r * &l).to_integer()).collect()).primitive_part()
}

/// Primitive square-free part with positive leading coefficient.
fn radical(p: &IntPoly) -> IntPoly {
    let r = p.squarefree_part().primitive_part();
    if r.lead().is_negative() {
        -&r
    } else {
        r
    }
}

/// `h(a) = log M(minpoly) / deg`.
pub fn weil_height(a: &AlgebraicNumber) -> Result<f64> {
    if a.is_zero() {
        return Err(Error::invalid("height of zero"));
    }
    Ok(log_mahler_measure(&a.minpoly)? / a.degree() as f64)
}

/// `h(b)` for `b ∈ ℚ(ζ_m)`, written `b = a/d` with `a ∈ ℤ[ζ_m]`, `d ∈ ℤ`:
///
/// `h(b) = (1/φ(m)) Σ_σ log⁺|σ(b)| + log d − (1/φ(m)) log N((a, d))`.
///
/// The archimedean sum runs over the exact conjugates and the finite part is
/// exact, so no polynomial roots are isolated. When the rounding bound of the
/// embeddings exceeds the error budget the minimal polynomial is built
/// (see [`minpoly_cyc`]) and its Mahler measure used instead.
pub fn weil_height_cyc(b: &CycElement) -> Result<f64> {
    if b.is_zero() {
        return Err(Error::invalid("height of zero"));
    }
    if let Some(r) = b.as_rational() {
        return Ok(super::log_abs_big(r.numer()).max(super::log_abs_big(r.denom())));
    }
    if b.root_of_unity_order().is_some() {
        return Ok(0.0);
    }
    let units = units_mod(b.conductor());
    // log⁺ is 1-Lipschitz, so this also bounds the error of the average.
    if embedding_error(b) > MAHLER_TOL {
        let f = minpoly_cyc(b)?;
        return Ok(log_mahler_measure(&f)? / f.deg() as f64);
    }
    let arch: f64 = units.iter().map(|&a| b.embed(a).norm().ln().max(0.0)).sum();
    Ok((arch + finite_part(b)) / units.len() as f64)
}

/// Bound on `|σ(c)| − |c.embed(a)|` for any embedding.
fn embedding_error(c: &CycElement) -> f64 {
    let terms = c.numerator().coeffs().len() as f64;
    let mass: f64 = c.numerator().coeffs().iter().map(|a| super::float_ratio(&a.abs(), &BigInt::one())).sum();
    8.0 * (terms + 2.0) * f64::EPSILON * mass / super::float_ratio(&c.denominator().abs(), &BigInt::one())
}

/// `φ(m)·log d − log N((a, d))`, the finite places' share of `φ(m)·h(a/d)`.
/// `N((a, d))` is the index of `aℤ[ζ] + dℤ[ζ]` in `ℤ[ζ]`, computed one
/// prime power of `d` at a time (CRT), or from a Smith form for huge `d`.
fn finite_part(b: &CycElement) -> f64 {
    let d = b.denominator().abs();
    if d.is_one() {
        return 0.0;
    }
    let m = b.conductor();
    let phi = euler_phi(m);
    let f = phi_poly(m);
    let a = b.numerator().rem_monic(&f);
    let log_index = match d.to_u64().filter(|&d| d <= LOCAL_NORM_MAX) {
        Some(d) => crate::exact::cyclotomic::factorize_small(d as usize)
            .into_iter()
            .map(|(p, e)| local_norm_exponent(&a, &f, phi, p as u64, e) as f64 * (p as f64).ln())
            .sum(),
        None => log_index_smith(&a, &f, phi, &d),
    };
    phi as f64 * super::log_abs_big(&d) - log_index
}

/// Largest denominator handled with machine-word arithmetic.
const LOCAL_NORM_MAX: u64 = 1 << 40;

/// Columns of multiplication by `a` on `ℤ[ζ]/(q)` in the power basis.
fn mult_matrix_mod(a: &IntPoly, f: &IntPoly, phi: usize, q: u64) -> Vec<Vec<u64>> {
    let qb = BigInt::from(q);
    let red = |c: &BigInt| -> u64 {
        use num_integer::Integer;
        c.mod_floor(&qb).to_u64().expect("residue fits")
    };
    let fm: Vec<u64> = (0..phi).map(|i| red(&f.coeff(i))).collect();
    let mut col: Vec<u64> = (0..phi).map(|i| red(&a.coeff(i))).collect();
    let mut cols = Vec::with_capacity(phi);
    for _ in 0..phi {
        cols.push(col.clone());
        // x·col, then x^φ = −Σ fᵢxⁱ.
        let top = col[phi - 1] as u128;
        let mut next = vec![0u64; phi];
        for i in 0..phi {
            let lower = if i == 0 { 0 } else { col[i - 1] as u128 };
            let sub = top * fm[i] as u128 % q as u128;
            next[i] = ((lower + q as u128 - sub) % q as u128) as u64;
        }
        col = next;
    }
    cols
}

/// `log_p N((a, p^e))` by elimination over the chain ring `ℤ/p^e`: each
/// pivot of valuation `v` contributes `p^v`, each missing pivot `p^e`.
fn local_norm_exponent(a: &IntPoly, f: &IntPoly, phi: usize, p: u64, e: u32) -> u32 {
    let q = p.pow(e);
    let mut mat = mult_matrix_mod(a, f, phi, q);
    let val = |x: u64| -> u32 {
        if x == 0 {
            return e;
        }
        let (mut x, mut v) = (x, 0);
        while x % p == 0 {
            x /= p;
            v += 1;
        }
        v
    };
    let mut total = 0u32;
    for r in 0..phi {
        let mut best: Option<(u32, usize, usize)> = None;
        for (j, col) in mat.iter().enumerate().skip(r) {
            for (i, &x) in col.iter().enumerate().skip(r) {
                let v = val(x);
                if v < e && best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            total += e * (phi - r) as u32;
            break;
        };
        total += v;
        mat.swap(r, pj);
        for col in mat.iter_mut() {
            col.swap(r, pi);
        }
        let pv = p.pow(v);
        let inv = inverse_mod_u64(mat[r][r] / pv, q);
        let pivot_col = mat[r].clone();
        for col in mat.iter_mut().skip(r + 1) {
            if col[r] == 0 {
                continue;
            }
            let t = ((col[r] / pv) as u128 * inv as u128 % q as u128) as u64;
            for i in r..phi {
                let sub = t as u128 * pivot_col[i] as u128 % q as u128;
                col[i] = ((col[i] as u128 + q as u128 - sub) % q as u128) as u64;
            }
        }
    }
    total
}

fn inverse_mod_u64(a: u64, q: u64) -> u64 {
    let (mut r0, mut r1) = (q as i128, (a % q) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let k = r0 / r1;
        (r0, r1) = (r1, r0 - k * r1);
        (t0, t1) = (t1, t0 - k * t1);
    }
    t0.rem_euclid(q as i128) as u64
}

/// `log [ℤ[ζ] : aℤ[ζ] + dℤ[ζ]]` from the Smith form of `[M_a mod d | d·I]`.
fn log_index_smith(a: &IntPoly, f: &IntPoly, phi: usize, d: &BigInt) -> f64 {
    use num_integer::Integer;
    let x = IntPoly::monomial(BigInt::one(), 1);
    let mut mat = IntMatrix::zeros(phi, 2 * phi);
    let mut col = a.clone();
    for j in 0..phi {
        for i in 0..phi {
            mat.set(i, j, col.coeff(i).mod_floor(d));
        }
        mat.set(j, phi + j, d.clone());
        col = (&col * &x).rem_monic(f);
    }
    invariant_factors(&mat).iter().map(super::log_abs_big).sum()
}

/// `Π_σ σ(p)` over `Gal(ℚ(ζ_m)/ℚ)`, `m` the lcm of the coefficient
/// conductors, as a primitive integer polynomial (constant term first).
/// Its roots are the roots of `p` together with all their conjugates.
pub fn norm_poly(p: &[CycElement]) -> Result<IntPoly> {
    use num_integer::Integer;
    if p.iter().all(CycElement::is_zero) {
        return Err(Error::invalid("norm of the zero polynomial"));
    }
    let m = p.iter().fold(1usize, |m, c| m.lcm(&c.conductor()));
    let mut acc: Vec<CycElement> = vec![CycElement::one()];
    for a in units_mod(m) {
        let q: Vec<CycElement> = p.iter().map(|c| c.galois(a % c.conductor())).collect();
        let mut next = vec![CycElement::zero(); acc.len() + q.len() - 1];
        for (i, x) in acc.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in q.iter().enumerate() {
                if !y.is_zero() {
                    next[i + j] = &next[i + j] + &(x * y);
                }
            }
        }
        acc = next;
    }
    let coeffs = acc
        .iter()
        .map(|e| {
            e.as_rational().ok_or_else(|| Error::Numeric {
                msg: "norm polynomial has irrational coefficients".into(),
                achieved: f64::NAN,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(rational_to_primitive(&coeffs))
}

/// Minimal polynomial over ℚ of a nonzero cyclotomic element.
pub fn minpoly_cyc(b: &CycElement) -> Result<IntPoly> {
    if b.is_zero() {
        return Err(Error::invalid("height of zero"));
    }
    if let Some(r) = b.as_rational() {
        return Ok(IntPoly::new(vec![-r.numer().clone(), r.denom().clone()]).primitive_part());
    }
    let m = b.conductor();
    let mut seen = HashSet::new();
    let mut conj = Vec::new();
    for a in units_mod(m) {
        let c = b.galois(a);
        if seen.insert(c.clone()) {
            conj.push(c);
        }
    }
    // Distinct conjugates already give the radical; multiplying them out
    // is the characteristic polynomial with repeated factors removed.
    let mut poly: Vec<CycElement> = vec![CycElement::one()];
    for c in &conj {
        let mut next = vec![CycElement::zero(); poly.len() + 1];
        for (i, p) in poly.iter().enumerate() {
            next[i + 1] = &next[i + 1] + p;
            next[i] = &next[i] - &(p * c);
        }
        poly = next;
    }
    let coeffs = poly
        .iter()
        .map(|e| {
            e.as_rational()
                .ok_or_else(|| Error::Numeric {
                    msg: format!("conjugate product of {b} is not rational"),
                    achieved: f64::NAN,
                })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(radical(&rational_to_primitive(&coeffs)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn mahler_examples() {
        assert!((mahler_measure(&p(&[-2, 1])).unwrap() - 2.0).abs() < 1e-12);
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((mahler_measure(&p(&[-1, -1, 1])).unwrap() - golden).abs() < 1e-10 * golden);
        let phi12 = crate::exact::cyclotomic_poly(12).unwrap();
        assert_eq!(mahler_measure(&phi12).unwrap(), 1.0);
    }

    #[test]
    fn lehmer_is_not_cyclotomic() {
        // Lehmer's polynomial: a Salem number ≈ 1.17628 and roots on the circle.
        let l = p(&[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        assert!(!is_cyclotomic_product(&l));
        let m = mahler_measure(&l).unwrap();
        assert!((m - 1.176_280_818_259_917).abs() < 1e-10);
    }

    #[test]
    fn cyclotomic_product_detection() {
        let prod = &crate::exact::cyclotomic_poly(7).unwrap() * &crate::exact::cyclotomic_poly(9).unwrap();
        assert!(is_cyclotomic_product(&prod));
        assert!(is_cyclotomic_product(&(-&prod)));
        assert!(!is_cyclotomic_product(&p(&[1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2])));
    }

    #[test]
    fn weil_height_examples() {
        assert_eq!(weil_height(&AlgebraicNumber::from_int(1)).unwrap(), 0.0);
        let r = BigRational::new(3.into(), 2.into());
        let h = weil_height(&AlgebraicNumber::from_rational(&r)).unwrap();
        assert!((h - 3f64.ln()).abs() < 1e-12);
        let g = AlgebraicNumber::from_minpoly(&p(&[-1, -1, 1]), Complex64::new(1.6, 0.0)).unwrap();
        let want = 0.5 * ((1.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((weil_height(&g).unwrap() - want).abs() < 1e-10);
        assert!((want - 0.240_605_912).abs() < 1e-9);
    }

    #[test]
    fn cyc_height_examples() {
        let z6 = CycElement::root_of_unity(6, 1).unwrap();
        assert_eq!(weil_height_cyc(&z6).unwrap(), 0.0);
        assert!((weil_height_cyc(&CycElement::from_int(2)).unwrap() - 2f64.ln()).abs() < 1e-12);
        // 1 − ζ₆: characteristic polynomial expanded by hand,
        // (x − 1 + ζ₆)(x − 1 + ζ₆⁻¹) = x² − (2 − ζ₆ − ζ₆⁻¹)x + (1 − ζ₆)(1 − ζ₆⁻¹)
        // with ζ₆ + ζ₆⁻¹ = 1 and (1 − ζ₆)(1 − ζ₆⁻¹) = 2 − 1 = 1, i.e. x² − x + 1.
        let b = &CycElement::one() - &z6;
        assert_eq!(minpoly_cyc(&b).unwrap(), p(&[1, -1, 1]));
        assert_eq!(weil_height_cyc(&b).unwrap(), 0.0);
    }

    #[test]
    fn cyc_height_agrees_on_quadratics() {
        // √5 = ζ₅ − ζ₅² − ζ₅³ + ζ₅⁴ (Gauss sum), so 1 + √5 has minpoly x² − 2x − 4.
        let g: CycElement = "cyc(5;1,1,-1,-1,1)".parse().unwrap();
        let mp = minpoly_cyc(&g).unwrap();
        assert_eq!(mp, p(&[-4, -2, 1]));
        let a = AlgebraicNumber::from_minpoly(&mp, g.to_complex()).unwrap();
        let h1 = weil_height_cyc(&g).unwrap();
        let h2 = weil_height(&a).unwrap();
        assert!((h1 - h2).abs() < 1e-9);
        // Both roots 1 ± √5 lie outside the unit circle, so M = |−4|.
        assert!((h1 - 0.5 * 4f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn cyc_height_matches_root_isolation() {
        for s in [
            "cyc(7;2,1)",
            "cyc(12;1,0,3)/5",
            "cyc(9;0,1,0,0,-2)/3",
            "cyc(15;3,0,1)",
            "cyc(3;1,-1)/3",
            "cyc(7;1,1)/2",
            "cyc(7;1,0,0,1)/2",
            "cyc(7;1,1,0,1)/2",
            "cyc(12;1,1,0,1)/6",
            "cyc(20;4,0,1,2)/10",
        ] {
            let g: CycElement = s.parse().unwrap();
            let f = minpoly_cyc(&g).unwrap();
            let want = log_mahler_measure(&f).unwrap() / f.deg() as f64;
            assert!((weil_height_cyc(&g).unwrap() - want).abs() < 1e-10, "{s}");
        }
    }

    #[test]
    fn local_norms_match_smith_form() {
        for (s, d) in [("cyc(7;1,1,0,1)", 2u64), ("cyc(3;1,-1)", 3), ("cyc(12;1,1,0,1)", 6), ("cyc(20;4,0,1,2)", 10), ("cyc(9;2,0,1)", 12), ("cyc(15;0,3,1)", 45)] {
            let g: CycElement = s.parse().unwrap();
            let m = g.conductor();
            let (phi, f) = (euler_phi(m), phi_poly(m));
            let a = g.numerator().rem_monic(&f);
            let local: f64 = crate::exact::cyclotomic::factorize_small(d as usize)
                .into_iter()
                .map(|(p, e)| local_norm_exponent(&a, &f, phi, p as u64, e) as f64 * (p as f64).ln())
                .sum();
            let smith = log_index_smith(&a, &f, phi, &BigInt::from(d));
            assert!((local - smith).abs() < 1e-9, "{s} mod {d}: {local} vs {smith}");
        }
    }

    #[test]
    fn one_plus_zeta_41() {
        // Conjugates 1 + ζ^k have modulus |2 cos(πk/41)|.
        let want: f64 = (1..41)
            .map(|k| (2.0 * (std::f64::consts::PI * k as f64 / 41.0).cos()).abs().ln().max(0.0))
            .sum::<f64>()
            / 40.0;
        let g = &CycElement::one() + &CycElement::root_of_unity(41, 1).unwrap();
        assert_eq!(minpoly_cyc(&g).unwrap().deg(), 40);
        assert!((weil_height_cyc(&g).unwrap() - want).abs() < 1e-12);
    }

    #[test]
    fn powers_and_inverse() {
        let g = AlgebraicNumber::from_minpoly(&p(&[-1, -1, 1]), Complex64::new(1.6, 0.0)).unwrap();
        let h = weil_height(&g).unwrap();
        for k in -3..=3 {
            let gk = g.pow(k).unwrap();
            assert!((weil_height(&gk).unwrap() - (k.abs() as f64) * h).abs() < 1e-9, "k={k}");
            assert!((gk.approx() - g.approx().powi(k as i32)).norm() < 1e-9);
        }
        // φ² = φ + 1 has minpoly x² − 3x + 1.
        assert_eq!(g.pow(2).unwrap().minpoly(), &p(&[1, -3, 1]));
        let inv = g.inv().unwrap();
        assert!((inv.approx().re - 0.618_033_988_749_895).abs() < 1e-12);
    }

    #[test]
    fn power_can_drop_degree() {
        // i² = −1
        let i = AlgebraicNumber::from_minpoly(&p(&[1, 0, 1]), Complex64::new(0.0, 1.0)).unwrap();
        let sq = i.pow(2).unwrap();
        assert_eq!(sq.as_rational(), Some(BigRational::from_integer((-1).into())));
        assert!(i.is_root_of_unity());
        assert_eq!(i.to_cyc().unwrap(), CycElement::root_of_unity(4, 1).unwrap());
    }

    #[test]
    fn product_of_square_roots() {
        // √2·√3 = √6
        let s2 = AlgebraicNumber::from_minpoly(&p(&[-2, 0, 1]), Complex64::new(1.4, 0.0)).unwrap();
        let s3 = AlgebraicNumber::from_minpoly(&p(&[-3, 0, 1]), Complex64::new(1.7, 0.0)).unwrap();
        let s6 = s2.mul(&s3).unwrap();
        assert_eq!(s6.minpoly(), &p(&[-6, 0, 1]));
        assert!(s6.approx().re > 0.0);
    }

    #[test]
    fn parse_round_trip() {
        let g = AlgebraicNumber::from_minpoly(&p(&[-1, -1, 1]), Complex64::new(-0.6, 0.0)).unwrap();
        let back: AlgebraicNumber = g.to_string().parse().unwrap();
        assert_eq!(back, g);
        let r: AlgebraicNumber = "-3/4".parse().unwrap();
        assert_eq!(r.minpoly(), &p(&[3, 4]));
    }

    #[test]
    fn ambiguous_approximation_is_rejected() {
        assert!(AlgebraicNumber::from_minpoly(&p(&[1, 0, 1]), Complex64::new(0.0, 0.0)).is_err());
        assert!(AlgebraicNumber::from_minpoly(&p(&[-2, 0, 1]), Complex64::new(0.0, 0.0)).is_err());
        // Reducible input.
        assert!(AlgebraicNumber::from_minpoly(&p(&[-1, 0, 1]), Complex64::new(1.0, 0.0)).is_err());
    }
}
