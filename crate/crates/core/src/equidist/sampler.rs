//! Monte-Carlo sampling of the equilibrium measure of a curve in 𝐆ₘ².
//!
//! On a curve the measure splits into pieces indexed by a coordinate `i`:
//! `x_i` is Haar-distributed on the unit circle and the point runs over all
//! branches of the curve above it. The piece for `x_i` has mass equal to the
//! number of those branches, the degree of `F` in the other variable.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sample::{Provenance, WeightedSample};
use crate::error::{Error, Result};
use crate::geometry::LaurentHypersurface;
use crate::heights::numeric_roots;

/// Relative size below which an extreme coefficient counts as vanishing.
const DEGENERATE_TOL: f64 = 1e-9;
/// Residual accepted for branch roots.
const ROOT_TOL: f64 = 1e-10;
/// Redraws allowed for a single draw index before giving up.
const MAX_ATTEMPTS: u32 = 64;

/// One piece of the equilibrium measure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    /// 1-based indices of the coordinates that are Haar-distributed.
    pub index: Vec<usize>,
    pub mass: u64,
}

/// Pieces with positive mass: `(1)` with mass `deg_y F`, `(2)` with `deg_x F`.
pub fn equilibrium_components(f: &LaurentHypersurface) -> Result<Vec<ComponentSpec>> {
    if f.n() != 2 {
        return Err(Error::Capability(format!(
            "equilibrium components are implemented for curves in 𝐆ₘ², got n = {}",
            f.n()
        )));
    }
    let (d, _) = f.multidegree();
    Ok([(1usize, d[1]), (2, d[0])]
        .into_iter()
        .filter(|&(_, m)| m > 0)
        .map(|(i, m)| ComponentSpec {
            index: vec![i],
            mass: m as u64,
        })
        .collect())
}

/// Draws split across components by mass, largest remainder first.
fn allocate(n: usize, masses: &[u64]) -> Vec<usize> {
    let total: u64 = masses.iter().sum();
    let mut alloc: Vec<usize> = masses
        .iter()
        .map(|&m| (n as u128 * m as u128 / total as u128) as usize)
        .collect();
    let mut order: Vec<usize> = (0..masses.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(n as u128 * masses[i] as u128 % total as u128));
    let short = n - alloc.iter().sum::<usize>();
    for &i in order.iter().take(short) {
        alloc[i] += 1;
    }
    alloc
}

/// Generator for draw `j` of component `c`: a fixed stream per index pair.
fn draw_rng(seed: u64, c: usize, j: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((c as u64) << 48) | j as u64);
    rng
}

/// Branch points over `x_circle = e^{iθ}`, or `None` if θ is degenerate.
fn branches(f: &LaurentHypersurface, circle: usize, theta: f64) -> Option<Vec<Vec<Complex64>>> {
    let other = 1 - circle;
    let mut at = [Complex64::new(1.0, 0.0); 2];
    at[circle] = Complex64::from_polar(1.0, theta);
    let c = f.specialize_complex(other, &at);
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if c.last()?.norm() <= DEGENERATE_TOL * scale || c[0].norm() <= DEGENERATE_TOL * scale {
        return None;
    }
    let roots = numeric_roots(&c, ROOT_TOL).ok()?;
    if roots.len() != c.len() - 1 || roots.iter().any(|z| z.norm() == 0.0 || !z.is_finite()) {
        return None;
    }
    Some(
        roots
            .into_iter()
            .map(|r| {
                let mut p = at.to_vec();
                p[other] = r;
                p
            })
            .collect(),
    )
}

/// `n` draws from the equilibrium measure of a curve, reproducible from
/// `seed` regardless of thread count.
///
/// Degenerate angles are redrawn from the same stream and counted in the
/// provenance; more than 1% of redraws shows up in
/// [`WeightedSample::warnings`].
pub fn equilibrium_sample(f: &LaurentHypersurface, n: usize, seed: u64) -> Result<WeightedSample> {
    if n == 0 {
        return Err(Error::config("N", "N must be positive"));
    }
    let comps = equilibrium_components(f)?;
    if comps.is_empty() {
        return Err(Error::invalid("the curve has no component of positive mass"));
    }
    let masses: Vec<u64> = comps.iter().map(|c| c.mass).collect();
    let total: u64 = masses.iter().sum();
    let alloc = allocate(n, &masses);
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut resampled = 0u64;
    for (ci, (comp, &nc)) in comps.iter().zip(&alloc).enumerate() {
        if nc == 0 {
            continue;
        }
        let circle = comp.index[0] - 1;
        let draws: Vec<(Vec<Vec<Complex64>>, u32)> = (0..nc)
            .into_par_iter()
            .map(|j| {
                let mut rng = draw_rng(seed, ci, j);
                for attempt in 0..MAX_ATTEMPTS {
                    let theta = rng.gen::<f64>() * TAU;
                    if let Some(b) = branches(f, circle, theta) {
                        return Ok((b, attempt));
                    }
                }
                Err(Error::Numeric {
                    msg: format!("no admissible angle after {MAX_ATTEMPTS} draws"),
                    achieved: f64::NAN,
                })
            })
            .collect::<Result<_>>()?;
        for (b, redraws) in draws {
            resampled += redraws as u64;
            let w = comp.mass as f64 / (total as f64 * nc as f64 * b.len() as f64);
            for p in b {
                points.push(p);
                weights.push(w);
            }
        }
    }
    let sum = super::sample::compensated_sum(&weights);
    for w in &mut weights {
        *w /= sum;
    }
    WeightedSample::new(
        2,
        points,
        weights,
        Provenance::EquilibriumMc {
            draws: n as u64,
            resampled,
        },
        Some(seed),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equidist::{radial_defect, weyl_sum};

    fn curve(s: &str) -> LaurentHypersurface {
        s.parse().unwrap()
    }

    fn masses(s: &str) -> Vec<(Vec<usize>, u64)> {
        equilibrium_components(&curve(s))
            .unwrap()
            .into_iter()
            .map(|c| (c.index, c.mass))
            .collect()
    }

    #[test]
    fn component_masses() {
        assert_eq!(masses("x + y - 1"), vec![(vec![1], 1), (vec![2], 1)]);
        assert_eq!(masses("y - x^2"), vec![(vec![1], 1), (vec![2], 2)]);
        assert_eq!(masses("y - 2"), vec![(vec![1], 1)]);
        assert!(equilibrium_components(&LaurentHypersurface::parse_with_dim("x + y + z", 3).unwrap()).is_err());
    }

    #[test]
    fn allocation_is_exact() {
        assert_eq!(allocate(10, &[1, 2]), vec![3, 7]);
        assert_eq!(allocate(1, &[1, 1]), vec![1, 0]);
        assert_eq!(allocate(9, &[1, 1, 1]), vec![3, 3, 3]);
    }

    #[test]
    fn diagonal_is_exact_in_the_invariant_mode() {
        let s = equilibrium_sample(&curve("y - x"), 500, 3).unwrap();
        assert!((weyl_sum(&s, &[1, -1]) - 1.0).norm() < 1e-12);
        assert!(radial_defect(&s) < 1e-12);
    }

    #[test]
    fn horizontal_line_defect() {
        let s = equilibrium_sample(&curve("y - 2"), 200, 1).unwrap();
        assert!((radial_defect(&s) - 2f64.ln()).abs() < 1e-14);
        assert!(s.points().iter().all(|p| (p[0].norm() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn parabola_weights_follow_masses() {
        let s = equilibrium_sample(&curve("y - x^2"), 300, 9).unwrap();
        // 100 draws on |x| = 1 (one branch each), 200 on |y| = 1 (two each).
        assert_eq!(s.len(), 100 + 400);
        let second: f64 = s.weights()[100..].iter().sum();
        assert!((second - 2.0 / 3.0).abs() < 1e-12);
        assert!(radial_defect(&s) < 1e-12);
    }

    #[test]
    fn same_seed_same_sample() {
        let f = curve("x + y - 1");
        let a = equilibrium_sample(&f, 400, 11).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| equilibrium_sample(&f, 400, 11).unwrap());
        assert_eq!(a.to_text(), b.to_text());
        let c = equilibrium_sample(&f, 400, 12).unwrap();
        assert_ne!(a.to_text(), c.to_text());
    }

    #[test]
    fn zero_draws_rejected() {
        assert!(matches!(
            equilibrium_sample(&curve("y - x"), 0, 0),
            Err(Error::Config { .. })
        ));
    }
}
