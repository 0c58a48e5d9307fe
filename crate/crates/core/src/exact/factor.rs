//! Factorization over ℚ: square-free decomposition, factorization modulo a
//! small prime, Hensel lifting and subset recombination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Default degree cap for [`factor_squarefree_rational`].
pub const DEFAULT_DEGREE_CAP: usize = 24;

/// Full factorization of `p` into irreducible primitive integer polynomials
/// with multiplicities, under the default degree cap.
///
/// The product of the factors (with multiplicity) equals the primitive part
/// of `p`. Constant inputs factor as the empty list.
pub fn factor_squarefree_rational(p: &IntPoly) -> Result<Vec<(IntPoly, usize)>> {
    factor_with_cap(p, DEFAULT_DEGREE_CAP)
}

pub fn factor_with_cap(p: &IntPoly, cap: usize) -> Result<Vec<(IntPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::invalid("cannot factor the zero polynomial"));
    }
    if p.deg() > cap {
        return Err(Error::Capability(format!(
            "factorization degree {} exceeds cap {cap}",
            p.deg()
        )));
    }
    let f = p.primitive_part();
    let mut out = Vec::new();
    let v = f.x_valuation();
    if v > 0 {
        out.push((IntPoly::from_i64s(&[0, 1]), v));
    }
    let f = f.shift_down(v);
    for (g, mult) in f.squarefree_decomposition() {
        for h in zassenhaus(&g) {
            out.push((h, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
    Ok(out)
}

/// Irreducible factors of a square-free primitive polynomial with `f(0) ≠ 0`.
fn zassenhaus(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.primitive_part()];
    }
    let p = choose_prime(f);
    let fp = to_modp(f, p);
    let lc_inv = inv_mod(fp[n], p);
    let monic: Vec<u64> = fp.iter().map(|&c| mulmod(c, lc_inv, p)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ n as u64);
    let factors = factor_modp(&monic, p, &mut rng);
    if factors.len() == 1 {
        return vec![f.primitive_part()];
    }

    // Coefficient bound for any factor scaled by lc: |lc|·2^n·‖f‖₂.
    let norm2: f64 = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::MAX).powi(2))
        .sum::<f64>()
        .sqrt();
    let lc = f.lead();
    let bound = lc.abs().to_f64().unwrap_or(f64::MAX) * 2f64.powi(n as i32) * norm2;
    let mut k = 1u32;
    let mut pk = BigInt::from(p);
    while pk.to_f64().unwrap_or(f64::MAX) <= 2.0 * bound + 1.0 {
        k += 1;
        pk *= p;
    }

    let lifted = hensel_lift(f, &factors, p, k);
    recombine(f, lifted, &pk)
}

/// Smallest prime not dividing `lc(f)` for which `f mod p` stays square-free.
fn choose_prime(f: &IntPoly) -> u64 {
    let n = f.deg();
    let mut p = 2u64;
    loop {
        if is_prime(p) {
            let fp = to_modp(f, p);
            if fp.len() == n + 1 {
                let g = gcd_modp(&fp, &deriv_modp(&fp, p), p);
                if g.len() == 1 {
                    return p;
                }
            }
        }
        p += 1;
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

// ---- arithmetic in F_p[x]; polynomials are coefficient vectors without trailing zeros

type ModPoly = Vec<u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn trim(v: &mut ModPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn to_modp(f: &IntPoly, p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    let mut v: ModPoly = f
        .coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    trim(&mut v);
    v
}

fn add_modp(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    let mut v: ModPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut v);
    v
}

fn sub_modp(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    let mut v: ModPoly = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut v);
    v
}

fn mul_modp(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(&mut v);
    v
}

fn divrem_modp(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    assert!(!b.is_empty(), "division by zero polynomial mod p");
    let mut r = a.clone();
    trim(&mut r);
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    while r.len() > db && !r.is_empty() {
        let shift = r.len() - 1 - db;
        let c = mulmod(*r.last().unwrap(), inv, p);
        q[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[i + shift] = (r[i + shift] + p - mulmod(c, bc, p)) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn monic_modp(a: &ModPoly, p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&c| mulmod(c, inv, p)).collect()
        }
    }
}

fn gcd_modp(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = divrem_modp(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic_modp(&a, p)
}

/// `(g, s, t)` with `s·a + t·b = g`, g monic.
fn xgcd_modp(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem_modp(&r0, &r1, p);
        let s2 = sub_modp(&s0, &mul_modp(&q, &s1, p), p);
        let t2 = sub_modp(&t0, &mul_modp(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    let sc = |v: &ModPoly| -> ModPoly { v.iter().map(|&c| mulmod(c, inv, p)).collect() };
    (sc(&r0), sc(&s0), sc(&t0))
}

fn deriv_modp(a: &ModPoly, p: u64) -> ModPoly {
    let mut v: ModPoly = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, i as u64 % p, p))
        .collect();
    trim(&mut v);
    v
}

fn powmod_poly(base: &ModPoly, mut e: u64, m: &ModPoly, p: u64) -> ModPoly {
    let mut r: ModPoly = vec![1];
    let mut b = divrem_modp(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            r = divrem_modp(&mul_modp(&r, &b, p), m, p).1;
        }
        e >>= 1;
        if e > 0 {
            b = divrem_modp(&mul_modp(&b, &b, p), m, p).1;
        }
    }
    r
}

/// Irreducible monic factors of a square-free monic polynomial over F_p.
fn factor_modp(f: &ModPoly, p: u64, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, rng, &mut out);
    }
    out.sort();
    out
}

fn distinct_degree(f: &ModPoly, p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: ModPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while f.len() - 1 >= 2 * d {
        h = powmod_poly(&h, p, &f, p);
        let g = gcd_modp(&sub_modp(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = divrem_modp(&f, &g, p).0;
            h = divrem_modp(&h, &f, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(g: &ModPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<ModPoly>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    loop {
        let mut a: ModPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim(&mut a);
        if a.len() < 2 {
            continue;
        }
        let b = if p == 2 {
            // Trace map a + a² + … + a^{2^{d−1}}.
            let mut acc = a.clone();
            let mut c = a.clone();
            for _ in 1..d {
                c = divrem_modp(&mul_modp(&c, &c, p), g, p).1;
                acc = add_modp(&acc, &c, p);
            }
            acc
        } else {
            // a^{(p^d − 1)/2} = (∏_{i<d} a^{p^i})^{(p − 1)/2}
            let mut acc = divrem_modp(&a, g, p).1;
            let mut c = acc.clone();
            for _ in 1..d {
                c = powmod_poly(&c, p, g, p);
                acc = divrem_modp(&mul_modp(&acc, &c, p), g, p).1;
            }
            let e = powmod_poly(&acc, (p - 1) / 2, g, p);
            sub_modp(&e, &vec![1], p)
        };
        let h = gcd_modp(&b, g, p);
        if h.len() > 1 && h.len() < g.len() {
            let q = divrem_modp(g, &h, p).0;
            equal_degree(&h, d, p, rng, out);
            equal_degree(&monic_modp(&q, p), d, p, rng, out);
            return;
        }
    }
}

// ---- Hensel lifting over ℤ

fn lift_to_int(a: &ModPoly) -> IntPoly {
    IntPoly::new(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// Lifts `f ≡ g·h (mod p)` with `g` monic to `f ≡ G·H (mod p^k)`, `G` monic,
/// `lc(H) = lc(f)`.
fn lift_pair(f: &IntPoly, g: &ModPoly, h: &ModPoly, p: u64, k: u32) -> (IntPoly, IntPoly) {
    let (one, s, t) = xgcd_modp(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let mut gg = lift_to_int(g);
    let mut hh = {
        let mut c = lift_to_int(h).into_coeffs();
        let last = c.len() - 1;
        c[last] = f.lead();
        IntPoly::new(c)
    };
    let mut q = BigInt::from(p);
    for _ in 1..k {
        let e = f - &(&gg * &hh);
        let e_int = IntPoly::new(e.coeffs().iter().map(|c| c / &q).collect());
        debug_assert!(e.coeffs().iter().all(|c| c.is_multiple_of(&q)));
        let ep = to_modp(&e_int, p);
        let (quot, tau) = divrem_modp(&mul_modp(&t, &ep, p), g, p);
        // σ·g + τ·h = e' with deg σ < deg h.
        let sigma = add_modp(&mul_modp(&s, &ep, p), &mul_modp(&quot, h, p), p);
        gg = &gg + &lift_to_int(&tau).scale(&q);
        hh = &hh + &lift_to_int(&sigma).scale(&q);
        q *= p;
    }
    (gg, hh)
}

/// Lifts the monic modular factorization `f ≡ lc(f)·∏ gᵢ (mod p)` to `p^k`.
fn hensel_lift(f: &IntPoly, factors: &[ModPoly], p: u64, k: u32) -> Vec<IntPoly> {
    let pk = BigInt::from(p).pow(k);
    let lc_mod = to_modp(&IntPoly::constant(f.lead()), p)[0];
    let mut out = Vec::with_capacity(factors.len());
    let mut cur = f.clone();
    for i in 0..factors.len() - 1 {
        let rest = factors[i + 1..]
            .iter()
            .fold(vec![lc_mod], |acc, g| mul_modp(&acc, g, p));
        let (g, h) = lift_pair(&cur, &factors[i], &rest, p, k);
        out.push(reduce_sym(&g, &pk));
        cur = reduce_sym(&h, &pk);
    }
    // cur ≡ lc · g_last; normalize to monic modulo p^k.
    let inv = mod_inverse(&f.lead(), &pk);
    out.push(reduce_sym(&cur.scale(&inv), &pk));
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Coefficients reduced into the symmetric range `(−m/2, m/2]`.
fn reduce_sym(a: &IntPoly, m: &BigInt) -> IntPoly {
    let half: BigInt = m / 2;
    IntPoly::new(
        a.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn recombine(f: &IntPoly, mut lifted: Vec<IntPoly>, pk: &BigInt) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut rem = f.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let r = lifted.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = rem.lead();
            let cand = idx
                .iter()
                .fold(IntPoly::constant(lc.clone()), |acc, &i| {
                    reduce_sym(&(&acc * &lifted[i]), pk)
                });
            // Cheap constant-term test before trial division.
            let c0 = cand.coeff(0);
            let target = &lc * rem.coeff(0);
            if !c0.is_zero() && target.is_multiple_of(&c0) {
                let g = cand.primitive_part();
                if let Some(q) = rem.exact_div(&g) {
                    out.push(g);
                    rem = q.primitive_part();
                    for &i in idx.iter().rev() {
                        lifted.remove(i);
                    }
                    found = true;
                    break;
                }
            }
            if !next_combination(&mut idx, r) {
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if rem.deg() > 0 {
        out.push(rem.primitive_part());
    }
    out
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::cyclotomic::cyclotomic_poly;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn product(fs: &[(IntPoly, usize)]) -> IntPoly {
        fs.iter()
            .fold(IntPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32))
    }

    #[test]
    fn x_squared_minus_one() {
        let f = factor_squarefree_rational(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn repeated_root() {
        let f = factor_squarefree_rational(&p(&[-1, 1]).pow(3)).unwrap();
        assert_eq!(f, vec![(p(&[-1, 1]), 3)]);
    }

    /// Brute force over integer factors of degree ≤ 2 with bounded
    /// coefficients: x⁴ + 1 has none, so it is irreducible over ℚ.
    #[test]
    fn x4_plus_1_irreducible_by_brute_force() {
        let f = p(&[1, 0, 0, 0, 1]);
        let mut found = false;
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                for c in 1..=1i64 {
                    let cands = [p(&[a, c]), p(&[a, b, c])];
                    for g in cands {
                        if g.deg() >= 1 && f.exact_div(&g).is_some() {
                            found = true;
                        }
                    }
                }
            }
        }
        assert!(!found);
        assert_eq!(factor_squarefree_rational(&f).unwrap(), vec![(f, 1)]);
    }

    #[test]
    fn cyclotomic_products_split_into_cyclotomics() {
        let f = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]); // x^12 − 1
        let fs = factor_squarefree_rational(&f).unwrap();
        let mut expect: Vec<(IntPoly, usize)> = [1, 2, 3, 4, 6, 12]
            .iter()
            .map(|&d| (cyclotomic_poly(d).unwrap(), 1))
            .collect();
        expect.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
        assert_eq!(fs, expect);
    }

    #[test]
    fn non_monic_and_content() {
        // 6·(2x − 3)(3x² + 1)(x + 5)²
        let f = &(&p(&[-3, 2]) * &p(&[1, 0, 3])) * &p(&[5, 1]).pow(2);
        let f = f.scale(&BigInt::from(6));
        let fs = factor_squarefree_rational(&f).unwrap();
        assert_eq!(product(&fs), f.primitive_part());
        assert_eq!(fs.len(), 3);
    }

    #[test]
    fn zero_root_and_cap() {
        let fs = factor_squarefree_rational(&p(&[0, 0, 2, 2])).unwrap();
        assert_eq!(fs, vec![(p(&[0, 1]), 2), (p(&[1, 1]), 1)]);
        let big = IntPoly::monomial(BigInt::one(), 30);
        assert!(matches!(
            factor_squarefree_rational(&big),
            Err(Error::Capability(_))
        ));
        assert!(factor_squarefree_rational(&IntPoly::zero()).is_err());
        assert!(factor_squarefree_rational(&p(&[7])).unwrap().is_empty());
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (x² − 2)(x² − 3) and x⁴ − 10x² + 1 (irreducible, splits mod every p)
        let sd = p(&[1, 0, -10, 0, 1]);
        assert_eq!(factor_squarefree_rational(&sd).unwrap(), vec![(sd.clone(), 1)]);
        let f = &p(&[-2, 0, 1]) * &p(&[-3, 0, 1]);
        assert_eq!(factor_squarefree_rational(&f).unwrap().len(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn product_reproduces_primitive_part(
            a in proptest::collection::vec(-6i64..6, 1..5),
            b in proptest::collection::vec(-6i64..6, 1..5),
            c in proptest::collection::vec(-6i64..6, 1..4),
        ) {
            let f = &(&p(&a) * &p(&b)) * &p(&c);
            prop_assume!(!f.is_zero() && f.deg() <= 24);
            let fs = factor_squarefree_rational(&f).unwrap();
            prop_assert_eq!(product(&fs), f.primitive_part());
            for (g, _) in &fs {
                prop_assert!(g.deg() >= 1);
                prop_assert_eq!(g.primitive_part(), g.clone());
            }
        }
    }
}
