//! Hypersurfaces in 𝐆ₘⁿ and their lattice invariants.

pub mod family;
pub mod fz;
pub mod hypersurface;
pub mod stabilizer;

pub use family::{nondegenerate_power, pinning_points, PinningCertificate, SupportFamily};
pub use fz::{faltings_zhang, fz_fiber_check, fz_fiber_is_stab_orbit, FiberCheck};
pub use hypersurface::LaurentHypersurface;
pub use stabilizer::{
    generates_ambient, generates_ambient_with, stabilizer, torsion_coset_test, CosetKind,
    Generation, GenerationOptions, StabilizerDescr, UnityTuple,
};

/// Partial degrees and their total; see [`LaurentHypersurface::multidegree`].
pub fn multidegree(f: &LaurentHypersurface) -> (Vec<i64>, i64) {
    f.multidegree()
}

/// See [`LaurentHypersurface::difference_lattice`].
pub fn difference_lattice(f: &LaurentHypersurface) -> crate::exact::IntMatrix {
    f.difference_lattice()
}
