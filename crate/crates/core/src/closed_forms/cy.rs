//! Weight 3 with `h^0 = 1`: the four diamond families I, II, III, IV indexed by
//! `d = ◇^{1,1} - ◇^{0,0}`, and their tabulated polarized relation.

use std::fmt;

use serde::Serialize;

use crate::closed_forms::weight3::Weight3Params;
use crate::diamond::{HodgeDiamond, HodgeVector};
use crate::error::{Error, Result};
use crate::relations::RelationEngine;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CyKind {
    I,
    II,
    III,
    IV,
}

impl CyKind {
    pub const ALL: [CyKind; 4] = [CyKind::I, CyKind::II, CyKind::III, CyKind::IV];

    /// Largest admissible `d` for `h = (1, h1, h1, 1)`, or `None` if the family is empty.
    pub fn max_index(self, h1: u64) -> Option<u64> {
        match self {
            CyKind::I => Some(h1),
            CyKind::II | CyKind::IV => h1.checked_sub(1),
            CyKind::III => h1.checked_sub(2),
        }
    }

    fn name(self) -> &'static str {
        match self {
            CyKind::I => "I",
            CyKind::II => "II",
            CyKind::III => "III",
            CyKind::IV => "IV",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CyType {
    pub kind: CyKind,
    pub d: u64,
}

impl fmt::Display for CyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind.name(), self.d)
    }
}

impl CyType {
    pub fn new(kind: CyKind, d: u64) -> Self {
        CyType { kind, d }
    }

    /// The `(a, b, c, d)` tuple of the family.
    pub fn params(&self) -> Weight3Params {
        let (a, b, c) = match self.kind {
            CyKind::I => (0, 0, 0),
            CyKind::II => (0, 0, 1),
            CyKind::III => (0, 1, 0),
            CyKind::IV => (1, 0, 0),
        };
        Weight3Params { a, b, c, d: self.d }
    }

    pub fn is_valid(&self, h1: u64) -> bool {
        self.kind.max_index(h1).is_some_and(|max| self.d <= max)
    }

    pub fn to_diamond(&self, h1: u64) -> Result<HodgeDiamond> {
        self.params().to_diamond(&HodgeVector::new(vec![1, h1, h1, 1])?)
    }
}

/// Every valid type for `h = (1, h1, h1, 1)`, grouped by kind then index.
pub fn cy_types(h1: u64) -> Vec<CyType> {
    CyKind::ALL
        .iter()
        .flat_map(|&kind| (0..=kind.max_index(h1).map_or(-1, |m| m as i64)).map(move |d| CyType::new(kind, d as u64)))
        .collect()
}

pub fn cy_classify(d: &HodgeDiamond) -> Result<CyType> {
    let h = d.hodge_vector();
    if h.weight() != 3 || h.get(0) != 1 {
        return Err(Error::input(format!("expected h = (1, h1, h1, 1), got {h}")));
    }
    let p = Weight3Params::from_diamond(d)?;
    let kind = match (p.a, p.b, p.c) {
        (0, 0, 0) => CyKind::I,
        (0, 0, 1) => CyKind::II,
        (0, 1, 0) => CyKind::III,
        (1, 0, 0) => CyKind::IV,
        _ => unreachable!("a + b + c <= h^0 = 1"),
    };
    Ok(CyType::new(kind, p.d))
}

/// The tabulated relation `t1 ⪯ t0` for `h = (1, h1, h1, 1)`:
///
/// * `K_{d1} ⪯ K_{d0}` iff `d1 <= d0`, for each kind `K`
/// * `III_{d1} ⪯ IV_{d0}` iff `d1 + 1 <= d0`
/// * `II_{d1} ⪯ IV_{d0}` iff `1 <= d1 <= d0`
/// * `II_{d1} ⪯ III_{d0}` iff `2 <= d1 <= d0 + 2`
/// * `I_{d1} ⪯ III_{d0}` iff `d1 <= min(d0, h1 - 2)`
/// * `I_{d1} ⪯ II_{d0}` or `IV_{d0}` iff `d1 <= min(d0, h1 - 1)`
///
/// and no other pairs. See [`cy_relation_engine`] for the relation computed from
/// primitive decompositions; the two differ on `II_{d1} ⪯ III_{h1-2}`.
pub fn cy_relation(h1: u64, t1: CyType, t0: CyType) -> Result<bool> {
    for t in [t1, t0] {
        if !t.is_valid(h1) {
            return Err(Error::input(format!("{t} is not a valid type for h1 = {h1}")));
        }
    }
    let (d1, d0) = (t1.d as i64, t0.d as i64);
    let h1 = h1 as i64;
    use CyKind::*;
    Ok(match (t1.kind, t0.kind) {
        (k1, k0) if k1 == k0 => d1 <= d0,
        (III, IV) => d1 < d0,
        (II, IV) => 1 <= d1 && d1 <= d0,
        (II, III) => 2 <= d1 && d1 <= d0 + 2,
        (I, III) => d1 <= d0.min(h1 - 2),
        (I, II) | (I, IV) => d1 <= d0.min(h1 - 1),
        _ => false,
    })
}

/// `t1 ⪯ t0` decided by the engine.
pub fn cy_relation_engine(engine: &RelationEngine, h1: u64, t1: CyType, t0: CyType) -> Result<bool> {
    engine.relates(&t1.to_diamond(h1)?, &t0.to_diamond(h1)?)
}

/// One row of the printable table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyTableEntry {
    pub from: String,
    pub to: String,
    pub table: bool,
    pub engine: bool,
}

/// All ordered pairs of distinct types with the tabulated and computed answers.
pub fn cy_table(engine: &RelationEngine, h1: u64) -> Result<Vec<CyTableEntry>> {
    let types = cy_types(h1);
    let mut out = Vec::new();
    for &t1 in &types {
        for &t0 in &types {
            if t1 == t0 {
                continue;
            }
            out.push(CyTableEntry {
                from: t1.to_string(),
                to: t0.to_string(),
                table: cy_relation(h1, t1, t0)?,
                engine: cy_relation_engine(engine, h1, t1, t0)?,
            });
        }
    }
    Ok(out)
}
