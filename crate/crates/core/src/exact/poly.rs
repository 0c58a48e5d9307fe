//! Dense univariate polynomials over ℤ.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Integer polynomial, constant term first. The coefficient vector never
/// carries trailing zeros, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c · x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `x^k - 1`
    pub fn x_pow_minus_one(k: usize) -> Self {
        let mut v = vec![BigInt::zero(); k + 1];
        v[0] = BigInt::from(-1);
        v[k] += BigInt::one();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Content divided out, leading coefficient made positive.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `x^deg · p(1/x)`
    pub fn reversed(&self) -> IntPoly {
        let mut v = self.coeffs.clone();
        v.reverse();
        IntPoly::new(v)
    }

    /// `p(-x)`
    pub fn negate_variable(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// `p(x^k)`
    pub fn inflate(&self, k: usize) -> IntPoly {
        if self.is_zero() || k == 1 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); self.deg() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * k] = c.clone();
        }
        IntPoly::new(v)
    }

    /// Multiplicity of 0 as a root, i.e. the number of leading zero coefficients.
    pub fn x_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^k`; the caller guarantees `k <= x_valuation()`.
    pub fn shift_down(&self, k: usize) -> IntPoly {
        IntPoly::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &IntPoly) -> IntPoly {
        assert!(m.is_monic(), "rem_monic: modulus must be monic");
        let dm = m.deg();
        if self.coeffs.len() <= dm {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        for i in (dm..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let q = std::mem::take(&mut r[i]);
            for (j, mc) in m.coeffs[..dm].iter().enumerate() {
                if !mc.is_zero() {
                    r[i - dm + j] -= &q * mc;
                }
            }
        }
        r.truncate(dm);
        IntPoly::new(r)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, m: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(m.is_monic(), "div_rem_monic: divisor must be monic");
        let dm = m.deg();
        if self.coeffs.len() <= dm {
            return (IntPoly::zero(), self.clone());
        }
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dm];
        for i in (dm..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut r[i]);
            for (j, mc) in m.coeffs[..dm].iter().enumerate() {
                if !mc.is_zero() {
                    r[i - dm + j] -= &c * mc;
                }
            }
            q[i - dm] = c;
        }
        r.truncate(dm);
        (IntPoly::new(q), IntPoly::new(r))
    }

    /// Exact division over ℤ; `None` when `d` does not divide `self` in ℤ[x].
    pub fn exact_div(&self, d: &IntPoly) -> Option<IntPoly> {
        assert!(!d.is_zero(), "exact_div by zero polynomial");
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let dd = d.deg();
        if self.deg() < dd {
            return None;
        }
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let (c, rem) = r[i].div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    r[i - dd + j] -= &c * dc;
                }
            }
            q[i - dd] = c;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPoly::new(q))
    }

    /// Pseudo-remainder `lc(d)^(deg a - deg d + 1) · a mod d`.
    pub fn pseudo_rem(&self, d: &IntPoly) -> IntPoly {
        assert!(!d.is_zero());
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return self.clone();
        }
        let lc = d.lead();
        let mut r = self.coeffs.clone();
        let mut top = r.len() - 1;
        loop {
            if top < dd {
                break;
            }
            let c = r[top].clone();
            for x in r.iter_mut() {
                *x *= &lc;
            }
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[top - dd + j] -= &c * dc;
                }
            }
            if top == 0 {
                break;
            }
            top -= 1;
        }
        r.truncate(dd);
        IntPoly::new(r)
    }

    /// Primitive gcd in ℤ[x] with positive leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part()
    }

    /// Yun's square-free decomposition of the primitive part:
    /// `pp(self) = ∏ fᵢ^mᵢ` with pairwise coprime square-free `fᵢ`.
    /// Factors of degree 0 are dropped; the list is ordered by multiplicity.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        let f = self.primitive_part();
        if f.deg() == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        // Gauss's lemma: quotients by primitive divisors stay in ℤ[x].
        let mut b = f.exact_div(&a0).expect("gcd divides f");
        let mut c = fp.exact_div(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&d);
            let b_next = b.exact_div(&a).expect("gcd divides b");
            c = d.exact_div(&a).expect("gcd divides d");
            if a.deg() > 0 {
                out.push((a, i));
            }
            b = b_next;
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Square-free part (radical) as a primitive polynomial.
    pub fn squarefree_part(&self) -> IntPoly {
        self.squarefree_decomposition()
            .into_iter()
            .fold(IntPoly::one(), |acc, (f, _)| &acc * &f)
    }

    pub fn eval_bigint(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + big_to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(big_to_f64).collect()
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn pow(&self, mut k: u32) -> IntPoly {
        let mut base = self.clone();
        let mut acc = IntPoly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

/// Pseudo-division `lc(d)^e · a = q·d + r` over ℤ.
pub fn pseudo_div(a: &IntPoly, d: &IntPoly) -> (IntPoly, IntPoly) {
    assert!(!d.is_zero());
    if a.is_zero() || a.deg() < d.deg() {
        return (IntPoly::zero(), a.clone());
    }
    let dd = d.deg();
    let lc = d.lead();
    let mut r = a.coeffs.clone();
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for top in (dd..r.len()).rev() {
        let c = r[top].clone();
        for x in r.iter_mut() {
            *x *= &lc;
        }
        for x in q.iter_mut() {
            *x *= &lc;
        }
        if !c.is_zero() {
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[top - dd + j] -= &c * dc;
            }
            q[top - dd] += &c;
        }
    }
    r.truncate(dd);
    (IntPoly::new(q), IntPoly::new(r))
}

/// Lossy conversion used at the exact-to-numeric boundary.
pub fn big_to_f64(c: &BigInt) -> f64 {
    c.to_f64().unwrap_or(if c.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    })
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
                    if let Some(r) = rhs.coeffs.get(i) {
                        c += r;
                    }
                    c
                })
                .collect(),
        )
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new(
            (0..n)
                .map(|i| {
                    let mut c = self.coeffs.get(i).cloned().unwrap_or_default();
                    if let Some(r) = rhs.coeffs.get(i) {
                        c -= r;
                    }
                    c
                })
                .collect(),
        )
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        IntPoly::new(v)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPoly {
            type Output = IntPoly;
            fn $m(self, rhs: IntPoly) -> IntPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || i == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn trailing_zeros_normalized() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn gcd_of_products() {
        let a = &p(&[-1, 1]) * &p(&[2, 0, 1]);
        let b = &p(&[-1, 1]) * &p(&[3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        assert_eq!(p(&[2, 4]).gcd(&p(&[6, 12])), p(&[1, 2]));
    }

    #[test]
    fn exact_division() {
        let a = &p(&[1, 1]) * &p(&[-3, 2]);
        assert_eq!(a.exact_div(&p(&[-3, 2])), Some(p(&[1, 1])));
        assert_eq!(p(&[1, 0, 1]).exact_div(&p(&[1, 1])), None);
        assert_eq!(p(&[1, 2]).exact_div(&p(&[1, 2])), Some(p(&[1])));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^3 (x+2)
        let f = &p(&[-1, 1]).pow(3) * &p(&[2, 1]);
        let d = f.squarefree_decomposition();
        assert_eq!(d, vec![(p(&[2, 1]), 1), (p(&[-1, 1]), 3)]);
        assert_eq!(f.squarefree_part(), &p(&[-1, 1]) * &p(&[2, 1]));
        // non-monic: (2x+1)^2 (3x-1)
        let g = &p(&[1, 2]).pow(2) * &p(&[-1, 3]);
        assert_eq!(
            g.squarefree_decomposition(),
            vec![(p(&[-1, 3]), 1), (p(&[1, 2]), 2)]
        );
    }

    #[test]
    fn rem_monic_reduces() {
        // x^4 mod x^2 + 1 = 1
        assert_eq!(p(&[0, 0, 0, 0, 1]).rem_monic(&p(&[1, 0, 1])), p(&[1]));
        let (q, r) = p(&[5, 0, 0, 1]).div_rem_monic(&p(&[-1, 1]));
        assert_eq!(r, p(&[6]));
        assert_eq!(&(&q * &p(&[-1, 1])) + &r, p(&[5, 0, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 2, 1]).to_string(), "x^3 + 2*x^2 - 1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
    }
}
