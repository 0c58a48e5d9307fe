//! Torsion points, small-height searches and uniform scans on curves.

pub mod scan;
pub mod torsion;

pub use scan::{
    essential_locus_filter, small_point_scan, uniform_scan, CorpusSpec, MemberStatus,
    PointSource, ScanOutput, ScanReport, SmallPointRecord, ThresholdCount,
};
pub use torsion::{torsion_points_on_curve, TorsionPoints};
