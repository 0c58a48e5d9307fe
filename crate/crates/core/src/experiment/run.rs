//! Dispatch of configurations to the library and the resulting run records.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, Inputs};
use crate::bogomolov::{uniform_scan, ScanReport};
use crate::equidist::{
    equilibrium_components, equilibrium_sample, galois_orbit, modes, radial_defect, weyl_sum,
    ComponentSpec, WeightedSample,
};
use crate::error::{Error, Result};
use crate::exact::CycElement;
use crate::geometry::{
    generates_ambient, nondegenerate_power, pinning_points, stabilizer, torsion_coset_test,
    CosetKind, Generation, LaurentHypersurface, StabilizerDescr, SupportFamily,
};
use crate::heights::{canonical_height, TorusPoint};

/// Bumped whenever the record or payload layout changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoordHeight {
    pub value: String,
    pub height: f64,
}

/// One Fourier mode; `abs_diff` is the distance to the Haar value 0.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeRow {
    pub k: Vec<i64>,
    pub re: f64,
    pub im: f64,
    pub abs_diff: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Payload {
    Height {
        point: String,
        coordinates: Vec<CoordHeight>,
        height: f64,
    },
    Orbit {
        point: String,
        n: usize,
        size: usize,
        radial_defect: f64,
        modes: Vec<ModeRow>,
    },
    Equidist {
        curve: String,
        components: Vec<ComponentSpec>,
        total_mass: u64,
        multidegree_total: i64,
        points: usize,
        resampled: u64,
        radial_defect: f64,
        modes: Vec<ModeRow>,
    },
    Stabilizer {
        curve: String,
        multidegree: Vec<i64>,
        stabilizer: StabilizerDescr,
        coset: CosetKind,
        generation: Generation,
    },
    Scan {
        family: String,
        reports: Vec<ScanReport>,
    },
    Pinning {
        family: String,
        points: Vec<TorusPoint>,
        residual_rank: usize,
        fiber_dim: usize,
        solution: Option<Vec<CycElement>>,
        u: usize,
        nondegenerate: bool,
    },
}

impl Payload {
    /// Canonical JSON; reruns of the same configuration give the same bytes.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("payload serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub schema_version: u32,
    pub config: ExperimentConfig,
    pub version: String,
    /// Seconds; the only field that differs between identical runs.
    pub wall_time: f64,
    pub payload: Payload,
    pub warnings: Vec<String>,
}

impl RunRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn parse_in<T: std::str::FromStr<Err = Error>>(key: &str, s: &str) -> Result<T> {
    s.parse().map_err(|e: Error| Error::config(key, e.to_string()))
}

fn mode_table(s: &WeightedSample, k_max: u32) -> Vec<ModeRow> {
    modes(s.n(), k_max)
        .into_iter()
        .map(|k| {
            let w = weyl_sum(s, &k);
            ModeRow {
                k,
                re: w.re,
                im: w.im,
                abs_diff: w.norm(),
            }
        })
        .collect()
}

/// Runs one configuration. Everything except `wall_time` is a function of
/// the configuration alone.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<RunRecord> {
    cfg.validate()?;
    let start = Instant::now();
    let mut warnings = Vec::new();
    let payload = match &cfg.inputs {
        Inputs::Height { point } => {
            let p: TorusPoint = parse_in("point", point)?;
            let coordinates = p
                .coords()
                .iter()
                .map(|c| {
                    Ok(CoordHeight {
                        value: c.to_string(),
                        height: c.height()?,
                    })
                })
                .collect::<Result<_>>()?;
            Payload::Height {
                point: p.to_string(),
                coordinates,
                height: canonical_height(&p)?,
            }
        }
        Inputs::Orbit { point, k_max } => {
            let p: TorusPoint = parse_in("point", point)?;
            let s = galois_orbit(&p)?;
            Payload::Orbit {
                point: p.to_string(),
                n: s.n(),
                size: s.len(),
                radial_defect: radial_defect(&s),
                modes: mode_table(&s, *k_max),
            }
        }
        Inputs::Equidist {
            curve,
            n,
            k_max,
            sample_path,
        } => {
            let f: LaurentHypersurface = parse_in("curve", curve)?;
            let comps = equilibrium_components(&f)?;
            let s = equilibrium_sample(&f, *n, cfg.seed)?;
            warnings.extend(s.warnings());
            if let Some(path) = sample_path {
                std::fs::write(path, s.to_text())?;
            }
            let resampled = match s.provenance() {
                crate::equidist::Provenance::EquilibriumMc { resampled, .. } => *resampled,
                _ => 0,
            };
            Payload::Equidist {
                curve: f.to_string(),
                total_mass: comps.iter().map(|c| c.mass).sum(),
                components: comps,
                multidegree_total: f.multidegree().1,
                points: s.len(),
                resampled,
                radial_defect: radial_defect(&s),
                modes: mode_table(&s, *k_max),
            }
        }
        Inputs::Stabilizer { curve } => {
            let f: LaurentHypersurface = parse_in("curve", curve)?;
            Payload::Stabilizer {
                curve: f.to_string(),
                multidegree: f.multidegree().0,
                stabilizer: stabilizer(&f),
                coset: torsion_coset_test(&f),
                generation: generates_ambient(&f),
            }
        }
        Inputs::BogomolovScan {
            family,
            members,
            thresholds,
            corpus,
        } => {
            let fam: SupportFamily = parse_in("family", family)?;
            let members = members
                .iter()
                .map(|m| m.iter().map(|c| parse_in::<CycElement>("members", c)).collect())
                .collect::<Result<Vec<Vec<_>>>>()?;
            let reports = uniform_scan(&fam, &members, thresholds, corpus)?;
            for r in &reports {
                warnings.extend(r.audit.iter().map(|a| format!("member {}: {a}", r.member)));
                if r.exceeds_prior_max {
                    warnings.push(format!("member {} exceeds the prior maximum count", r.member));
                }
            }
            Payload::Scan {
                family: fam.to_string(),
                reports,
            }
        }
        Inputs::Pinning { family, corpus, u } => {
            let fam: SupportFamily = parse_in("family", family)?;
            let pts = corpus
                .iter()
                .map(|p| parse_in::<TorusPoint>("corpus", p))
                .collect::<Result<Vec<_>>>()?;
            let cert = pinning_points(&fam, &pts)?;
            Payload::Pinning {
                family: fam.to_string(),
                nondegenerate: nondegenerate_power(&fam, *u, &pts)?,
                points: cert.points,
                residual_rank: cert.residual_rank,
                fiber_dim: cert.fiber_dim,
                solution: cert.solution,
                u: *u,
            }
        }
    };
    Ok(RunRecord {
        schema_version: SCHEMA_VERSION,
        config: cfg.clone(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        wall_time: start.elapsed().as_secs_f64(),
        payload,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(json: &str) -> RunRecord {
        run_experiment(&ExperimentConfig::from_json(json).unwrap()).unwrap()
    }

    #[test]
    fn height_payload() {
        let r = run(r#"{"kind":"height","point":"(2, 1/2)"}"#);
        let Payload::Height { height, .. } = r.payload else { panic!() };
        assert!((height - 2.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn orbit_payload_has_the_subtorus_mode() {
        let r = run(r#"{"kind":"orbit","point":"(zeta(5), zeta(5)^2)","K":3}"#);
        let Payload::Orbit { modes, size, .. } = &r.payload else { panic!() };
        assert_eq!(*size, 4);
        let m = modes.iter().find(|m| m.k == vec![2, -1]).unwrap();
        assert!((m.re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn equidist_requires_draws() {
        let cfg = ExperimentConfig::new(Inputs::Equidist {
            curve: "y - x".into(),
            n: 0,
            k_max: 2,
            sample_path: None,
        });
        assert!(matches!(run_experiment(&cfg), Err(Error::Config { key, .. }) if key == "N"));
    }

    #[test]
    fn payload_round_trips_and_repeats() {
        let j = r#"{"kind":"equidist","curve":"x + y - 1","N":300,"K":2,"seed":4}"#;
        let a = run(j);
        let b = run(j);
        assert_eq!(a.payload.to_json(), b.payload.to_json());
        let back = RunRecord::from_json(&a.to_json()).unwrap();
        assert_eq!(back.payload.to_json(), a.payload.to_json());
    }

    #[test]
    fn bad_inputs_name_their_key() {
        let cfg = ExperimentConfig::new(Inputs::Stabilizer { curve: "x +* y".into() });
        assert!(matches!(run_experiment(&cfg), Err(Error::Config { key, .. }) if key == "curve"));
    }

    #[test]
    fn stabilizer_and_pinning_payloads() {
        let r = run(r#"{"kind":"stabilizer","curve":"x^2 - y^2"}"#);
        let Payload::Stabilizer { stabilizer, .. } = r.payload else { panic!() };
        assert_eq!(stabilizer.dim, 1);
        let r = run(r#"{"kind":"pinning","family":"?*x + ?*y - 1","corpus":["(1,1)","(1,2)"],"u":2}"#);
        let Payload::Pinning { fiber_dim, nondegenerate, .. } = r.payload else { panic!() };
        assert_eq!(fiber_dim, 0);
        assert!(nondegenerate);
    }
}
