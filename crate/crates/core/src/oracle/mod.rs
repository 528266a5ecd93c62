//! Brute-force and constructive checks built on the circulant form
//! `Φ = 1 - det circ(1, .., -x, .., -y, ..)`.

mod circulant;
mod geometry;
mod lattice;
mod stepped;

pub use circulant::{circulant_spec, CirculantEntry, CirculantSpec};
pub use geometry::{cycle_geometry, is_m_ordered, CycleGeometry};
pub use lattice::{canonical_element, lattice_path, LatticePath};
pub use stepped::{
    all_classes, cycle_stats, det_via_permutations, det_via_permutations_bounded, enumerate_t,
    enumerate_t_bounded, class_coefficient, Cycle, CycleReport, CycleStat, StepLabel, SteppedPermutation,
    DEFAULT_ORACLE_MAX_P,
};
