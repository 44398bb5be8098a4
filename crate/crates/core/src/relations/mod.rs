//! The polarized relation `⪯` and the graphs `R(h)`, `R_k(h)`, `R°_k(h)` built from it.

mod engine;
mod graph;
mod profile;

pub use engine::{RelationEngine, Witness, WitnessPart};
pub use graph::{
    analyze, build_circ_graph, build_graph, build_weak_graph, quotient, Analysis, Counterexamples, GraphKind,
    RelationGraph, Vertex,
};
pub use profile::{
    all_profiles, bound_vector, check_maximal_saturated, profile_order, suspension_check, BoundKind, BoundVector,
    ColumnProfile, SaturationReport,
};

use crate::diamond::HodgeDiamond;

/// The column profile `q ↦ ◇^{0,q}` of a diamond.
pub fn column_profile(d: &HodgeDiamond) -> ColumnProfile {
    ColumnProfile::new(d.column(0).to_vec()).expect("diamond columns are nonempty")
}
