//! Complex root isolation: Aberth iteration with inclusion-disk certification.

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::float::{Cx, Dd, Real};
use crate::error::{Error, Result};
use crate::exact::IntPoly;

/// A disk containing exactly `multiplicity` roots (counted with multiplicity).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootEnclosure {
    pub center: Complex64,
    pub radius: f64,
    pub multiplicity: usize,
}

impl RootEnclosure {
    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }
}

const MAX_ITER: usize = 500;

/// Isolates every complex root of `p` to radius `eps`.
///
/// Repeated roots are reported once with their multiplicity; the zero root
/// (if any) is exact with radius 0.
pub fn complex_roots(p: &IntPoly, eps: f64) -> Result<Vec<RootEnclosure>> {
    if p.is_zero() {
        return Err(Error::invalid("complex_roots of the zero polynomial"));
    }
    if !(eps > 0.0) {
        return Err(Error::invalid(format!("eps must be positive, got {eps}")));
    }
    let mut out = Vec::new();
    let v = p.x_valuation();
    if v > 0 {
        out.push(RootEnclosure {
            center: Complex64::zero(),
            radius: 0.0,
            multiplicity: v,
        });
    }
    let q = p.shift_down(v).primitive_part();
    for (part, mult) in q.squarefree_decomposition() {
        if part.deg() == 0 {
            continue;
        }
        for (center, radius) in isolate_squarefree(&part, eps)? {
            out.push(RootEnclosure {
                center,
                radius,
                multiplicity: mult,
            });
        }
    }
    Ok(out)
}

/// Certified disks for a squarefree polynomial with nonzero constant term.
pub(crate) fn isolate_squarefree(p: &IntPoly, eps: f64) -> Result<Vec<(Complex64, f64)>> {
    let n = p.deg();
    if n == 1 {
        // Exact rational root; only the conversion to f64 is inexact.
        let r = -super::float_ratio(&p.coeff(0), &p.coeff(1));
        let rad = r.abs() * f64::EPSILON;
        return Ok(vec![(Complex64::new(r, 0.0), rad)]);
    }

    let c64: Vec<Cx<f64>> = p
        .coeffs()
        .iter()
        .map(|c| Cx::new(f64::from_bigint(c), 0.0))
        .collect();
    let init = initial_guess(&c64);
    let z64 = aberth(&c64, init, 1e-15);
    let mut achieved = f64::INFINITY;
    if let Some(radii) = certify(&c64, &z64) {
        let worst = radii.iter().cloned().fold(0.0, f64::max);
        if worst <= eps {
            return Ok(pack(&z64, &radii));
        }
        achieved = worst;
    }

    let cdd: Vec<Cx<Dd>> = p
        .coeffs()
        .iter()
        .map(|c| Cx::new(Dd::from_bigint(c), Dd::from_f64(0.0)))
        .collect();
    let init: Vec<Cx<Dd>> = z64.iter().map(|z| Cx::from_c64(z.to_c64())).collect();
    let zdd = aberth(&cdd, init, 1e-30);
    if let Some(radii) = certify(&cdd, &zdd) {
        let worst = radii.iter().cloned().fold(0.0, f64::max);
        if worst <= eps {
            return Ok(pack(&zdd, &radii));
        }
        achieved = achieved.min(worst);
    }
    Err(Error::Numeric {
        msg: format!("root isolation of degree-{n} polynomial did not reach eps={eps:e}"),
        achieved,
    })
}

fn pack<T: Real>(z: &[Cx<T>], radii: &[f64]) -> Vec<(Complex64, f64)> {
    z.iter()
        .zip(radii)
        .map(|(z, &r)| {
            let c = z.to_c64();
            // Rounding the center to f64 moves it by at most one ulp per part.
            (c, r + 2.0 * f64::EPSILON * c.norm())
        })
        .collect()
}

/// Points on a circle whose radius is the geometric mean of the root moduli.
fn initial_guess<T: Real>(c: &[Cx<T>]) -> Vec<Cx<T>> {
    let n = c.len() - 1;
    let a0 = c[0].abs().to_f64();
    let an = c[n].abs().to_f64();
    let r = if a0 > 0.0 && an > 0.0 {
        (a0 / an).powf(1.0 / n as f64)
    } else {
        1.0
    };
    (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Cx::new(T::from_f64(r * t.cos()), T::from_f64(r * t.sin()))
        })
        .collect()
}

/// `(p(z), p'(z))` by Horner.
fn horner<T: Real>(c: &[Cx<T>], z: Cx<T>) -> (Cx<T>, Cx<T>) {
    let mut p = Cx::zero();
    let mut dp = Cx::zero();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + *a;
    }
    (p, dp)
}

fn aberth<T: Real>(c: &[Cx<T>], mut z: Vec<Cx<T>>, tol: f64) -> Vec<Cx<T>> {
    let n = z.len();
    let mut done = vec![false; n];
    for iter in 0..MAX_ITER {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(c, z[i]);
            if p.norm_sqr().to_f64() == 0.0 {
                done[i] = true;
                continue;
            }
            let mut s = Cx::zero();
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm_sqr().to_f64() > 0.0 {
                        s = s + d.recip();
                    }
                }
            }
            let ratio = if dp.norm_sqr().to_f64() == 0.0 {
                // Stationary point: nudge deterministically.
                Cx::new(T::from_f64(1e-3 * (iter as f64 + 1.0)), T::from_f64(1e-3))
            } else {
                p / dp
            };
            let one = Cx::new(T::from_f64(1.0), T::from_f64(0.0));
            let w = ratio / (one - ratio * s);
            let wn = w.abs().to_f64();
            if !wn.is_finite() {
                all = false;
                continue;
            }
            z[i] = z[i] - w;
            if wn <= tol * z[i].abs().to_f64().max(1e-300) {
                done[i] = true;
            } else {
                all = false;
            }
        }
        if all {
            break;
        }
    }
    z
}

/// Weierstrass inclusion radii, inflated for evaluation error, or `None`
/// if the disks are not pairwise disjoint.
///
/// For distinct approximations `zᵢ` of a degree-n polynomial, each disk
/// `|z − zᵢ| ≤ n·|p(zᵢ)| / |lc·Π_{j≠i}(zᵢ − zⱼ)|` holds a root, and disjoint
/// disks hold exactly one root each.
fn certify<T: Real>(c: &[Cx<T>], z: &[Cx<T>]) -> Option<Vec<f64>> {
    let n = z.len();
    let lc = c[n].abs().to_f64();
    let gamma = 4.0 * (n as f64 + 2.0) * T::EPS;
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let (p, _) = horner(c, z[i]);
        let az = z[i].abs().to_f64();
        // Running bound on the rounding error of Horner's scheme.
        let mut mag = 0.0;
        for a in c.iter().rev() {
            mag = mag * az + a.abs().to_f64();
        }
        let val = p.abs().to_f64() + gamma * mag;
        let mut denom = lc;
        for j in 0..n {
            if j != i {
                denom *= (z[i] - z[j]).abs().to_f64();
            }
        }
        if !(denom > 0.0) || !denom.is_finite() {
            return None;
        }
        let r = n as f64 * val / denom * (1.0 + 1e-10);
        if !r.is_finite() {
            return None;
        }
        radii.push(r);
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (z[i] - z[j]).abs().to_f64();
            if d <= radii[i] + radii[j] {
                return None;
            }
        }
    }
    Some(radii)
}

/// Roots of a polynomial with floating complex coefficients (constant term first).
///
/// Not certified: each root must satisfy `|p(z)| ≤ tol·Σ|aₖ||z|ᵏ`.
/// Leading zero coefficients are dropped.
pub fn numeric_roots(coeffs: &[Complex64], tol: f64) -> Result<Vec<Complex64>> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|z| z.norm() == 0.0) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::invalid("numeric_roots of the zero polynomial"));
    }
    let mut zeros = 0;
    while c.len() > 1 && c[0].norm() == 0.0 {
        c.remove(0);
        zeros += 1;
    }
    let mut out = vec![Complex64::zero(); zeros];
    if c.len() == 1 {
        return Ok(out);
    }
    let cx: Vec<Cx<f64>> = c.iter().map(|&z| Cx::from_c64(z)).collect();
    let z = aberth(&cx, initial_guess(&cx), 1e-15);
    for zi in z {
        let zc = zi.to_c64();
        let (p, _) = horner(&cx, zi);
        let az = zc.norm();
        let mag = c.iter().rev().fold(0.0, |m, a| m * az + a.norm());
        let res = p.abs() / mag.max(f64::MIN_POSITIVE);
        if !res.is_finite() || res > tol {
            return Err(Error::Numeric {
                msg: "numeric root did not converge".into(),
                achieved: res,
            });
        }
        out.push(zc);
    }
    Ok(out)
}
