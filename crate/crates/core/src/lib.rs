//! Combinatorics of polarized relations between limiting mixed Hodge structure types.
//!
//! The crate enumerates admissible Hodge diamonds for a Hodge vector, decides the
//! degeneration relation `D1 ⪯ D0` through primitive decompositions, and builds the
//! relation graphs `R(h)`, `R_k(h)` and `R°_k(h)` together with order-theoretic
//! analyses of them. Closed-form characterizations for weights 2 and 3 and the Hodge
//! numbers of hypersurfaces and double covers live alongside as independent checks.
//!
//! ```
//! use mhs_relations::{enumerate_admissible, HodgeVector, RelationEngine};
//!
//! let h: HodgeVector = "1,2,1".parse().unwrap();
//! let diamonds = enumerate_admissible(&h, 100).unwrap();
//! assert_eq!(diamonds.len(), 3);
//!
//! let engine = RelationEngine::default();
//! assert!(engine.relates(&diamonds[0], &diamonds[2]).unwrap());
//! ```

pub mod cli;
pub mod closed_forms;
pub mod diamond;
pub mod error;
pub mod geometry;
pub mod relations;

pub use diamond::{
    enumerate_admissible, is_admissible, pure_diamond, reduce_mod_k, shift, DiamondClass, HodgeDiamond, HodgeVector,
    PrimitiveDecomposition, SparseGrid, DEFAULT_LIMIT,
};
pub use error::{Error, Result};
pub use relations::{
    analyze, bound_vector, build_circ_graph, build_graph, build_weak_graph, check_maximal_saturated, profile_order,
    suspension_check, Analysis, BoundKind, BoundVector, ColumnProfile, GraphKind, RelationEngine, RelationGraph,
    SaturationReport, Vertex, Witness,
};
