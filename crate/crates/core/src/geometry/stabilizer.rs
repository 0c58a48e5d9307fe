//! Stabilizers, torsion cosets and the generation test.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::hypersurface::LaurentHypersurface;
use crate::error::{Error, Result};
use crate::exact::{smith_normal_form, CycElement, IntMatrix};
use crate::heights::numeric_roots;

/// The torsion point `a_j = ζ_order^{exponents_j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnityTuple {
    pub order: u64,
    pub exponents: Vec<i64>,
}

impl UnityTuple {
    pub fn point(&self) -> Result<Vec<CycElement>> {
        self.exponents
            .iter()
            .map(|&e| CycElement::root_of_unity(self.order as usize, e))
            .collect()
    }
}

/// `Stab(Z) ≅ 𝐆ₘ^dim × Π ℤ/dᵢ`, read off from the Smith form of the
/// difference lattice L: Stab is the common kernel of the characters in L.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilizerDescr {
    pub n: usize,
    pub dim: usize,
    /// Invariant factors `> 1`, each dividing the next.
    pub torsion_invariants: Vec<u64>,
    /// One generator per torsion invariant, same order.
    pub torsion_generators: Vec<UnityTuple>,
    /// Cocharacters `t ↦ t^{u}` spanning the identity component.
    pub torus_directions: Vec<Vec<i64>>,
    /// Rows of the difference lattice; `a ∈ Stab` iff `a^row = 1` for all rows.
    pub characters: Vec<Vec<i64>>,
}

impl StabilizerDescr {
    pub fn is_finite(&self) -> bool {
        self.dim == 0
    }

    /// Order of the component group `Π dᵢ`.
    pub fn component_order(&self) -> u64 {
        self.torsion_invariants.iter().product()
    }

    /// Exact membership test.
    pub fn contains(&self, a: &[CycElement]) -> Result<bool> {
        if a.len() != self.n {
            return Err(Error::invalid("point dimension differs from the stabilizer's"));
        }
        for row in &self.characters {
            let mut v = CycElement::one();
            for (ai, &e) in a.iter().zip(row) {
                if e != 0 {
                    v = &v * &ai.pow(e)?;
                }
            }
            if !v.is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `#(Stab ∩ μ_N^n) = N^dim · Π gcd(dᵢ, N)`.
    pub fn count_in_mu(&self, big_n: u64) -> u64 {
        let mut c = big_n.pow(self.dim as u32);
        for &d in &self.torsion_invariants {
            c *= d.gcd(&big_n);
        }
        c
    }

    /// Elements of the finite group generated by the torsion generators.
    pub fn component_representatives(&self) -> Result<Vec<Vec<CycElement>>> {
        let mut out = vec![vec![CycElement::one(); self.n]];
        for g in &self.torsion_generators {
            let p = g.point()?;
            let mut next = Vec::with_capacity(out.len() * g.order as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..g.order {
                    next.push(cur.clone());
                    cur = cur.iter().zip(&p).map(|(a, b)| a * b).collect();
                }
            }
            out = next;
        }
        Ok(out)
    }
}

/// Stabilizer of `Z(F)` under translation.
///
/// With `D = U·A·V` the Smith form of the difference lattice `A`, a point `a`
/// lies in Stab iff `b_i = a^{(V⁻¹)_i}` satisfies `b_i^{d_i} = 1`; pulling back
/// gives generators `a_j = ζ_{d_i}^{V_{j,i}}` and directions = columns of V
/// past the rank.
pub fn stabilizer(f: &LaurentHypersurface) -> StabilizerDescr {
    let a = f.difference_lattice();
    let n = f.n();
    let (d, _, v) = smith_normal_form(&a);
    let k = a.rows().min(a.cols());
    let rank = (0..k).filter(|&i| !d.get(i, i).is_zero()).count();
    let mut inv = Vec::new();
    let mut gens = Vec::new();
    for i in 0..rank {
        let di = d.get(i, i).to_u64().expect("invariant factor fits in u64");
        if di > 1 {
            inv.push(di);
            gens.push(UnityTuple {
                order: di,
                exponents: (0..n)
                    .map(|j| small(&v.get(j, i).mod_floor(&BigInt::from(di))))
                    .collect(),
            });
        }
    }
    let dirs = (rank..n)
        .map(|i| (0..n).map(|j| small(v.get(j, i))).collect())
        .collect();
    StabilizerDescr {
        n,
        dim: n - rank,
        torsion_invariants: inv,
        torsion_generators: gens,
        torus_directions: dirs,
        characters: matrix_rows(&a),
    }
}

fn small(x: &BigInt) -> i64 {
    x.to_i64().expect("lattice entry fits in i64")
}

pub(crate) fn matrix_rows(a: &IntMatrix) -> Vec<Vec<i64>> {
    (0..a.rows())
        .map(|i| a.row(i).iter().map(small).collect())
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CosetKind {
    NotCoset,
    Coset { torsion: bool },
}

/// A hypersurface is a coset of a subtorus iff it is a binomial
/// `c₁x^{v₁} + c₂x^{v₂}`, i.e. `x^{v₁−v₂} = −c₂/c₁`; the coset is torsion iff
/// that ratio is a root of unity.
pub fn torsion_coset_test(f: &LaurentHypersurface) -> CosetKind {
    if !f.is_binomial() {
        return CosetKind::NotCoset;
    }
    let t = f.terms();
    let ratio = -&(&t[1].1 / &t[0].1);
    CosetKind::Coset {
        torsion: ratio.root_of_unity_order().is_some(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Generation {
    Yes,
    No,
    /// No character `χ_m` with `‖m‖∞ ≤ bound` was constant on sampled
    /// quotients of points of Z.
    HeuristicYes,
}

#[derive(Clone, Debug)]
pub struct GenerationOptions {
    pub char_bound: i64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for GenerationOptions {
    fn default() -> Self {
        GenerationOptions {
            char_bound: 6,
            samples: 4,
            seed: 0,
        }
    }
}

/// Whether the smallest subtorus containing `Z·Z⁻¹` is all of 𝐆ₘⁿ.
pub fn generates_ambient(f: &LaurentHypersurface) -> Generation {
    generates_ambient_with(f, &GenerationOptions::default())
}

pub fn generates_ambient_with(f: &LaurentHypersurface, opts: &GenerationOptions) -> Generation {
    let n = f.n();
    if n >= 2 && f.is_binomial() {
        return Generation::No;
    }
    if n == 2 && f.difference_lattice().rank() == 2 {
        return Generation::Yes;
    }
    let pts = sample_points(f, opts);
    if pts.len() < 2 {
        return Generation::No;
    }
    let quotients: Vec<Vec<Complex64>> = pts
        .iter()
        .skip(1)
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| a / b).collect())
        .collect();
    for m in characters(n, opts.char_bound) {
        let constant = quotients.iter().all(|q| {
            let v: Complex64 = q
                .iter()
                .zip(&m)
                .fold(Complex64::new(1.0, 0.0), |acc, (z, &e)| acc * z.powi(e as i32));
            (v - 1.0).norm() < 1e-8
        });
        if constant {
            return Generation::No;
        }
    }
    Generation::HeuristicYes
}

/// Nonzero `m` with `‖m‖∞ ≤ b`, one of each `±m` pair.
fn characters(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut m = vec![-b; n];
    loop {
        // Keep m whose first nonzero entry is positive.
        if m.iter().find(|&&e| e != 0).is_some_and(|&e| e > 0) {
            out.push(m.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            if m[i] < b {
                m[i] += 1;
                break;
            }
            m[i] = -b;
            i += 1;
        }
    }
}

/// Numeric points of Z: random coordinates in all but the last variable,
/// then every root in the last one.
fn sample_points(f: &LaurentHypersurface, opts: &GenerationOptions) -> Vec<Vec<Complex64>> {
    let n = f.n();
    let last = n - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut pts = Vec::new();
    // With one variable there is nothing to randomize: Z is the root set.
    let rounds = if n == 1 { 1 } else { opts.samples * 4 };
    for _ in 0..rounds {
        if pts.len() >= opts.samples.max(2) {
            break;
        }
        let mut x: Vec<Complex64> = (0..n)
            .map(|_| Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU)))
            .collect();
        let poly = f.specialize_complex(last, &x);
        let Ok(roots) = numeric_roots(&poly, 1e-9) else {
            continue;
        };
        for r in roots.into_iter().filter(|r| r.norm() > 1e-12) {
            x[last] = r;
            pts.push(x.clone());
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> LaurentHypersurface {
        s.parse().unwrap()
    }

    #[test]
    fn stabilizer_examples() {
        let s = stabilizer(&f("x + y - 1"));
        assert_eq!((s.dim, s.torsion_invariants.clone()), (0, vec![]));
        let s = stabilizer(&f("x*y - 1"));
        assert_eq!((s.dim, s.torsion_invariants.clone()), (1, vec![]));
        // (t, t⁻¹) stabilizes xy = 1.
        let d = &s.torus_directions[0];
        assert_eq!(d[0], -d[1]);
        let s = stabilizer(&f("x^2 - y^2"));
        assert_eq!((s.dim, s.torsion_invariants.clone()), (1, vec![2]));
        let g = s.torsion_generators[0].point().unwrap();
        assert!(s.contains(&g).unwrap());
        assert!(!g.iter().all(|c| c.is_one()));
    }

    #[test]
    fn coset_examples() {
        assert_eq!(torsion_coset_test(&f("x*y - 1")), CosetKind::Coset { torsion: true });
        assert_eq!(torsion_coset_test(&f("x - 2*y")), CosetKind::Coset { torsion: false });
        assert_eq!(torsion_coset_test(&f("x + y - 1")), CosetKind::NotCoset);
        assert_eq!(torsion_coset_test(&f("x^3 - zeta(7)*y")), CosetKind::Coset { torsion: true });
    }

    #[test]
    fn generation_examples() {
        assert_eq!(generates_ambient(&f("x + y - 1")), Generation::Yes);
        assert_eq!(generates_ambient(&f("x*y - 1")), Generation::No);
        assert_eq!(generates_ambient(&f("x^2*y^3 - 5")), Generation::No);
        assert_eq!(generates_ambient(&f("x + y + z - 1")), Generation::HeuristicYes);
        // Roots ±√2: the quotient −1 is torsion, so Z·Z⁻¹ is finite.
        assert_eq!(generates_ambient(&f("x^2 - 2")), Generation::No);
        // Golden ratio and its conjugate: the quotient −φ² is not torsion.
        assert_eq!(generates_ambient(&f("x^2 - x - 1")), Generation::HeuristicYes);
    }

    #[test]
    fn character_enumeration() {
        assert_eq!(characters(1, 2), vec![vec![1], vec![2]]);
        assert_eq!(characters(2, 1).len(), (9 - 1) / 2);
    }

    #[test]
    fn mu_counts() {
        let s = stabilizer(&f("x^2 - y^2"));
        assert_eq!(s.count_in_mu(6), 6 * 2);
        assert_eq!(s.count_in_mu(5), 5);
        let reps = s.component_representatives().unwrap();
        assert_eq!(reps.len(), 2);
    }
}
