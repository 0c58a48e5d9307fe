//! Fourier statistics of weighted samples.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::sample::WeightedSample;
use crate::error::{Error, Result};

/// Moduli within this distance of 1 count as on the unit circle.
const CIRCLE_SLACK: f64 = 4.0 * f64::EPSILON;

/// Anything with Fourier coefficients `∫ χ_k dμ` on `(S¹)ⁿ`.
pub trait WeylModes {
    fn dim(&self) -> usize;
    fn mode(&self, k: &[i64]) -> Complex64;
}

/// Normalized Haar measure on `(S¹)ⁿ`: every nonzero mode vanishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Haar {
    pub n: usize,
}

impl WeylModes for Haar {
    fn dim(&self) -> usize {
        self.n
    }

    fn mode(&self, k: &[i64]) -> Complex64 {
        if k.iter().all(|&e| e == 0) {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }
}

impl WeylModes for WeightedSample {
    fn dim(&self) -> usize {
        self.n()
    }

    fn mode(&self, k: &[i64]) -> Complex64 {
        weyl_sum(self, k)
    }
}

/// `Σ_j w_j Π_i (x_i(j)/|x_i(j)|)^{k_i}`, summed in sample order.
pub fn weyl_sum(s: &WeightedSample, k: &[i64]) -> Complex64 {
    assert_eq!(k.len(), s.n(), "mode dimension differs from the sample's");
    let mut acc = Complex64::new(0.0, 0.0);
    for (p, &w) in s.points().iter().zip(s.weights()) {
        let mut angle = 0.0;
        for (z, &e) in p.iter().zip(k) {
            if e != 0 {
                angle += e as f64 * z.arg();
            }
        }
        acc += Complex64::from_polar(w, angle);
    }
    acc
}

/// `Σ_j w_j Σ_i |log|x_i(j)||`.
pub fn radial_defect(s: &WeightedSample) -> f64 {
    s.points()
        .iter()
        .zip(s.weights())
        .map(|(p, &w)| {
            w * p
                .iter()
                .map(|z| {
                    let r = z.norm();
                    if (r - 1.0).abs() <= CIRCLE_SLACK {
                        0.0
                    } else {
                        r.ln().abs()
                    }
                })
                .sum::<f64>()
        })
        .sum()
}

/// All `k ∈ ℤⁿ` with `0 < ‖k‖∞ ≤ cutoff`, lexicographically ascending.
pub fn modes(n: usize, cutoff: u32) -> Vec<Vec<i64>> {
    let c = cutoff as i64;
    let mut out = Vec::new();
    let mut k = vec![-c; n];
    loop {
        if k.iter().any(|&e| e != 0) {
            out.push(k.clone());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if k[i] < c {
                k[i] += 1;
                break;
            }
            k[i] = -c;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeDiff {
    pub k: Vec<i64>,
    pub abs_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub rows: Vec<ModeDiff>,
    /// Largest `abs_diff` and the first mode attaining it.
    pub sup: f64,
    pub argmax: Option<Vec<i64>>,
}

/// `|W_k(A) − W_k(B)|` over all modes `0 < ‖k‖∞ ≤ cutoff`.
pub fn discrepancy_report<A, B>(a: &A, b: &B, cutoff: u32) -> Result<DiscrepancyReport>
where
    A: WeylModes + ?Sized,
    B: WeylModes + ?Sized,
{
    if a.dim() != b.dim() {
        return Err(Error::invalid(format!(
            "discrepancy between dimensions {} and {}",
            a.dim(),
            b.dim()
        )));
    }
    let mut rows = Vec::new();
    let mut sup = 0.0;
    let mut argmax = None;
    for k in modes(a.dim(), cutoff) {
        let d = (a.mode(&k) - b.mode(&k)).norm();
        if d > sup || argmax.is_none() {
            sup = d;
            argmax = Some(k.clone());
        }
        rows.push(ModeDiff { k, abs_diff: d });
    }
    Ok(DiscrepancyReport { rows, sup, argmax })
}
