//! Closed-form and tabulated characterizations in weights 2 and 3.

pub mod cy;
pub mod weight2;
pub mod weight3;

pub use cy::{cy_classify, cy_relation, cy_relation_engine, cy_table, cy_types, CyKind, CyTableEntry, CyType};
pub use weight2::{weight2_poset_class, weight2_relation, PosetClass, Weight2Params};
pub use weight3::{
    scan_weight3, scan_weight3_with, weight3_system, weight3_system_row9_flipped, weight3_violations, PairRecord,
    ScanRange, ScanReport, SystemRow, Weight3Params, ROW9_SIGN_FLIPPED, WEIGHT3_SYSTEM,
};
