//! Weighted point clouds on `(ℂ*)ⁿ` and their text format.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::cyclotomic::units_mod;
use crate::exact::CycElement;
use crate::heights::TorusPoint;

const WEIGHT_TOL: f64 = 1e-12;

/// Where a sample came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    GaloisOrbit,
    /// `draws` successful θ draws and `resampled` rejected ones.
    EquilibriumMc { draws: u64, resampled: u64 },
    External,
}

impl Provenance {
    /// Share of rejected draws, for Monte-Carlo samples.
    pub fn resample_rate(&self) -> Option<f64> {
        match *self {
            Provenance::EquilibriumMc { draws, resampled } if draws + resampled > 0 => {
                Some(resampled as f64 / (draws + resampled) as f64)
            }
            _ => None,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::GaloisOrbit => write!(f, "GaloisOrbit"),
            Provenance::EquilibriumMc { draws, resampled } => {
                write!(f, "EquilibriumMC draws={draws} resampled={resampled}")
            }
            Provenance::External => write!(f, "External"),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.split_whitespace();
        match it.next() {
            Some("GaloisOrbit") => Ok(Provenance::GaloisOrbit),
            Some("External") => Ok(Provenance::External),
            Some("EquilibriumMC") => {
                let mut draws = None;
                let mut resampled = None;
                for kv in it {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| Error::Parse(format!("bad provenance field {kv:?}")))?;
                    let v: u64 = v
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad provenance count {v:?}")))?;
                    match k {
                        "draws" => draws = Some(v),
                        "resampled" => resampled = Some(v),
                        _ => return Err(Error::Parse(format!("unknown provenance field {k:?}"))),
                    }
                }
                Ok(Provenance::EquilibriumMc {
                    draws: draws.unwrap_or(0),
                    resampled: resampled.unwrap_or(0),
                })
            }
            _ => Err(Error::Parse(format!("unknown provenance {s:?}"))),
        }
    }
}

/// A probability measure with finite support on `(ℂ*)ⁿ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedSample {
    n: usize,
    points: Vec<Vec<Complex64>>,
    weights: Vec<f64>,
    provenance: Provenance,
    seed: Option<u64>,
}

impl WeightedSample {
    /// Checks dimensions, nonzero coordinates, positive weights and total mass 1.
    pub fn new(
        n: usize,
        points: Vec<Vec<Complex64>>,
        weights: Vec<f64>,
        provenance: Provenance,
        seed: Option<u64>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("sample dimension must be positive"));
        }
        if points.is_empty() {
            return Err(Error::invalid("empty sample"));
        }
        if points.len() != weights.len() {
            return Err(Error::invalid("points and weights differ in length"));
        }
        for p in &points {
            if p.len() != n {
                return Err(Error::invalid(format!("point of dimension {} in a sample of dimension {n}", p.len())));
            }
            if p.iter().any(|z| z.norm() == 0.0 || !z.is_finite()) {
                return Err(Error::invalid("sample point off the torus"));
            }
        }
        if weights.iter().any(|&w| !(w > 0.0 && w.is_finite())) {
            return Err(Error::invalid("weights must be positive"));
        }
        let total = compensated_sum(&weights);
        if (total - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::invalid(format!("weights sum to {total}, not 1")));
        }
        Ok(WeightedSample {
            n,
            points,
            weights,
            provenance,
            seed,
        })
    }

    /// Equal weights.
    pub fn uniform(n: usize, points: Vec<Vec<Complex64>>, provenance: Provenance, seed: Option<u64>) -> Result<Self> {
        let w = 1.0 / points.len().max(1) as f64;
        let weights = vec![w; points.len()];
        WeightedSample::new(n, points, weights, provenance, seed)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<Complex64>] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Human-readable warnings, currently only a resample rate above 1%.
    pub fn warnings(&self) -> Vec<String> {
        match self.provenance.resample_rate() {
            Some(r) if r > 0.01 => vec![format!(
                "resample rate {:.3}% exceeds 1%",
                100.0 * r
            )],
            _ => Vec::new(),
        }
    }

    /// Header `n`, `N`, `provenance`, `seed`, then `re,im,…,weight` per point.
    pub fn to_text(&self) -> String {
        let mut s = format!("n {}\nN {}\nprovenance {}\n", self.n, self.len(), self.provenance);
        match self.seed {
            Some(seed) => s.push_str(&format!("seed {seed}\n")),
            None => s.push_str("seed -\n"),
        }
        for (p, w) in self.points.iter().zip(&self.weights) {
            let mut fields: Vec<String> = Vec::with_capacity(2 * self.n + 1);
            for z in p {
                fields.push(fmt_f64(z.re));
                fields.push(fmt_f64(z.im));
            }
            fields.push(fmt_f64(*w));
            s.push_str(&fields.join(","));
            s.push('\n');
        }
        s
    }

    pub fn from_text(s: &str) -> Result<Self> {
        let mut lines = s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let mut header = |key: &str| -> Result<String> {
            let l = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing header line {key:?}")))?;
            l.strip_prefix(key)
                .and_then(|r| r.strip_prefix(' '))
                .map(|r| r.trim().to_string())
                .ok_or_else(|| Error::Parse(format!("expected {key:?} header, got {l:?}")))
        };
        let n: usize = header("n")?
            .parse()
            .map_err(|_| Error::Parse("bad n".into()))?;
        let count: usize = header("N")?
            .parse()
            .map_err(|_| Error::Parse("bad N".into()))?;
        let provenance: Provenance = header("provenance")?.parse()?;
        let seed = match header("seed")?.as_str() {
            "-" => None,
            v => Some(v.parse().map_err(|_| Error::Parse(format!("bad seed {v:?}")))?),
        };
        let mut points = Vec::with_capacity(count);
        let mut weights = Vec::with_capacity(count);
        for l in lines {
            let v: Vec<f64> = l
                .split(',')
                .map(|t| t.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("bad sample line {l:?}")))?;
            if v.len() != 2 * n + 1 {
                return Err(Error::Parse(format!("sample line has {} fields, expected {}", v.len(), 2 * n + 1)));
            }
            points.push(v[..2 * n].chunks(2).map(|c| Complex64::new(c[0], c[1])).collect());
            weights.push(v[2 * n]);
        }
        if points.len() != count {
            return Err(Error::Parse(format!("header says {count} points, found {}", points.len())));
        }
        WeightedSample::new(n, points, weights, provenance, seed)
    }
}

/// 17 significant digits; round-trips every finite `f64`.
/// Neumaier summation; plain summation drifts past the weight tolerance
/// at large sample sizes.
pub(crate) fn compensated_sum(xs: &[f64]) -> f64 {
    let (mut s, mut c) = (0.0f64, 0.0f64);
    for &x in xs {
        let t = s + x;
        c += if s.abs() >= x.abs() { (s - t) + x } else { (x - t) + s };
        s = t;
    }
    s + c
}

pub(crate) fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// The `(ℤ/m)*`-orbit of an exact point, `m` the lcm of the coordinate
/// conductors, with duplicates removed exactly and equal weights.
pub fn galois_orbit(p: &TorusPoint) -> Result<WeightedSample> {
    let coords = p
        .exact_coords()
        .ok_or_else(|| Error::invalid(format!("galois_orbit needs a cyclotomic point, got {p}")))?;
    let m = coords.iter().fold(1usize, |m, c| m.lcm(&c.conductor()));
    let mut seen: HashSet<Vec<CycElement>> = HashSet::new();
    let mut points = Vec::new();
    for a in units_mod(m) {
        let image: Vec<CycElement> = coords.iter().map(|c| c.galois(a % c.conductor().max(1))).collect();
        if seen.insert(image) {
            points.push(coords.iter().map(|c| c.embed(a % c.conductor().max(1))).collect());
        }
    }
    WeightedSample::uniform(p.dim(), points, Provenance::GaloisOrbit, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> TorusPoint {
        s.parse().unwrap()
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(galois_orbit(&pt("(1, 1)")).unwrap().len(), 1);
        assert_eq!(galois_orbit(&pt("(zeta(6), zeta(6)^5)")).unwrap().len(), 2);
        assert_eq!(galois_orbit(&pt("(zeta(5), zeta(5)^2)")).unwrap().len(), 4);
        // Conductor 12, four distinct images.
        assert_eq!(galois_orbit(&pt("(zeta(4), zeta(3))")).unwrap().len(), 4);
        assert_eq!(galois_orbit(&pt("(-1, 3/2)")).unwrap().len(), 1);
    }

    #[test]
    fn orbit_points_match_embeddings() {
        let s = galois_orbit(&pt("(zeta(6), zeta(6)^5)")).unwrap();
        let w = Complex64::from_polar(1.0, std::f64::consts::TAU / 6.0);
        assert!((s.points()[0][0] - w).norm() < 1e-15);
        assert!((s.points()[1][0] - w.conj()).norm() < 1e-15);
        assert!((s.points()[1][1] - w).norm() < 1e-15);
    }

    #[test]
    fn rejects_bad_samples() {
        let z = Complex64::new(1.0, 0.0);
        assert!(WeightedSample::new(1, vec![vec![z]], vec![0.5], Provenance::External, None).is_err());
        assert!(WeightedSample::new(1, vec![vec![Complex64::new(0.0, 0.0)]], vec![1.0], Provenance::External, None).is_err());
        assert!(WeightedSample::new(2, vec![vec![z]], vec![1.0], Provenance::External, None).is_err());
    }

    #[test]
    fn text_round_trip() {
        let pts = vec![
            vec![Complex64::new(0.1, -2.5), Complex64::new(1.0 / 3.0, 1e-300)],
            vec![Complex64::new(-7.0, 0.0), Complex64::new(std::f64::consts::PI, 2.0)],
        ];
        let s = WeightedSample::new(
            2,
            pts,
            vec![0.25, 0.75],
            Provenance::EquilibriumMc { draws: 2, resampled: 1 },
            Some(42),
        )
        .unwrap();
        let text = s.to_text();
        assert!(text.starts_with("n 2\nN 2\nprovenance EquilibriumMC draws=2 resampled=1\nseed 42\n"));
        assert_eq!(WeightedSample::from_text(&text).unwrap(), s);
        assert_eq!(s.warnings().len(), 1);
    }
}
