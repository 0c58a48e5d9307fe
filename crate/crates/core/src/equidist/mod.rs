//! Galois orbits, Weyl sums and equilibrium-measure sampling.

pub mod sample;
pub mod sampler;
pub mod weyl;

pub use sample::{galois_orbit, Provenance, WeightedSample};
pub use sampler::{equilibrium_components, equilibrium_sample, ComponentSpec};
pub use weyl::{
    discrepancy_report, modes, radial_defect, weyl_sum, DiscrepancyReport, Haar, ModeDiff,
    WeylModes,
};
