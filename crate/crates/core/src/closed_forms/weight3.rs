//! Weight 3: `h = (h^0, h^1, h^1, h^0)`, diamonds parameterized by
//! `a = ◇^{0,0}`, `b = ◇^{0,1}`, `c = ◇^{0,2}` and `d = ◇^{1,1} - a`.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diamond::{reduce_mod_k, HodgeDiamond, HodgeVector};
use crate::error::{Error, Result};
use crate::relations::{build_graph, quotient, RelationEngine, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight3Params {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

fn check_weight(h: &HodgeVector) -> Result<(u64, u64)> {
    if h.weight() != 3 {
        return Err(Error::input(format!("expected a weight 3 hodge vector, got {h}")));
    }
    Ok((h.get(0), h.get(1)))
}

impl Weight3Params {
    pub fn from_diamond(d: &HodgeDiamond) -> Result<Self> {
        check_weight(d.hodge_vector())?;
        let a = d.get(0, 0);
        Ok(Weight3Params { a, b: d.get(0, 1), c: d.get(0, 2), d: d.get(1, 1) - a })
    }

    /// `a + b + c <= h^0` and `a + 2b + c + d <= h^1`.
    ///
    /// The second bound is `◇^{0,1} <= ◇^{1,2} = h^1 - a - b - c - d`; it implies
    /// `◇^{1,2} >= 0`.
    pub fn is_admissible(&self, h: &HodgeVector) -> Result<bool> {
        let (h0, h1) = check_weight(h)?;
        let Weight3Params { a, b, c, d } = *self;
        Ok(a + b + c <= h0 && a + 2 * b + c + d <= h1)
    }

    pub fn to_diamond(&self, h: &HodgeVector) -> Result<HodgeDiamond> {
        if !self.is_admissible(h)? {
            return Err(Error::input(format!("{self:?} is not admissible for {h}")));
        }
        let (h0, h1) = (h.get(0), h.get(1));
        let Weight3Params { a, b, c, d } = *self;
        let e = h1 - a - b - c - d;
        let f = h0 - a - b - c;
        HodgeDiamond::new(
            h.clone(),
            vec![vec![a, b, c, f], vec![b, d + a, e, c], vec![c, e, d + a, b], vec![f, c, b, a]],
        )
    }

    fn as_i64(&self) -> [i64; 4] {
        [self.a as i64, self.b as i64, self.c as i64, self.d as i64]
    }
}

/// One inequality `Σ coeffs · (a0,b0,c0,d0,a1,b1,c1,d1,h1) >= 0`.
#[derive(Clone, Copy, Debug)]
pub struct SystemRow {
    /// The inequality as displayed.
    pub display: &'static str,
    pub coeffs: [i64; 9],
}

macro_rules! row {
    ($display:literal, [$($c:expr),*]) => {
        SystemRow { display: $display, coeffs: [$($c),*] }
    };
}

/// The 15 inequalities, columns `a0 b0 c0 d0 a1 b1 c1 d1 h1`, in display order.
pub const WEIGHT3_SYSTEM: [SystemRow; 15] = [
    row!("a0-a1 >= 0", [1, 0, 0, 0, -1, 0, 0, 0, 0]),
    row!("a0-a1+b0-b1 >= 0", [1, 1, 0, 0, -1, -1, 0, 0, 0]),
    row!("a0-a1+b0-b1+c0-c1 >= 0", [1, 1, 1, 0, -1, -1, -1, 0, 0]),
    row!("2c1+d0-d1 >= 0", [0, 0, 0, 1, 0, 0, 2, -1, 0]),
    row!("b0-b1+c0-c1+d0 >= 0", [0, 1, 1, 1, 0, -1, -1, 0, 0]),
    row!("a0-a1+2(b0-b1)+d0-d1 >= 0", [1, 2, 0, 1, -1, -2, 0, -1, 0]),
    row!("2b0-b1+d0-d1 >= 0", [0, 2, 0, 1, 0, -1, 0, -1, 0]),
    row!("b0-b1+c1+d0-d1 >= 0", [0, 1, 0, 1, 0, -1, 1, -1, 0]),
    row!("2a0+4b0+2c0+d0+d1 <= 2h1", [-2, -4, -2, -1, 0, 0, 0, -1, 2]),
    row!("2(c0-c1)+d0-d1 >= 0", [0, 0, 2, 1, 0, 0, -2, -1, 0]),
    row!("a1+2b0+c1+d0 <= h1", [0, -2, 0, -1, -1, 0, -1, 0, 1]),
    row!("a0-a1+2(c0-c1)+d1 >= 0", [1, 0, 2, 0, -1, 0, -2, 1, 0]),
    row!("c0-c1+d1 >= 0", [0, 0, 1, 0, 0, 0, -1, 1, 0]),
    row!("2(b0-b1)+2d0-d1 >= 0", [0, 2, 0, 2, 0, -2, 0, -1, 0]),
    row!("a0+b0+b1+c0+d1 <= h1", [-1, -1, -1, 0, 0, -1, 0, -1, 1]),
];

/// Row 9 with the sign of `d1` flipped. The printed row rejects relations that
/// demonstrably hold (e.g. `II_1 ⪯ IV_1` for `h = (1,2,2,1)`); this variant is the
/// nearest inequality satisfied by every computed relation. Only used for diagnosis.
pub const ROW9_SIGN_FLIPPED: SystemRow = row!("2(c0-c1)+d0+d1 >= 0", [0, 0, 2, 1, 0, 0, -2, 1, 0]);

/// [`WEIGHT3_SYSTEM`] with row 9 replaced by [`ROW9_SIGN_FLIPPED`].
pub fn weight3_system_row9_flipped() -> [SystemRow; 15] {
    let mut system = WEIGHT3_SYSTEM;
    system[9] = ROW9_SIGN_FLIPPED;
    system
}

/// Indices of the rows of [`WEIGHT3_SYSTEM`] violated by the pair.
pub fn weight3_violations(p0: Weight3Params, p1: Weight3Params, h: &HodgeVector) -> Result<Vec<usize>> {
    violations_in(&WEIGHT3_SYSTEM, p0, p1, h)
}

fn violations_in(system: &[SystemRow], p0: Weight3Params, p1: Weight3Params, h: &HodgeVector) -> Result<Vec<usize>> {
    for p in [p0, p1] {
        if !p.is_admissible(h)? {
            return Err(Error::input(format!("{p:?} is not admissible for {h}")));
        }
    }
    let mut x = [0i64; 9];
    x[..4].copy_from_slice(&p0.as_i64());
    x[4..8].copy_from_slice(&p1.as_i64());
    x[8] = h.get(1) as i64;
    Ok(system
        .iter()
        .enumerate()
        .filter(|(_, row)| row.coeffs.iter().zip(&x).map(|(c, v)| c * v).sum::<i64>() < 0)
        .map(|(i, _)| i)
        .collect())
}

/// True iff all 15 inequalities hold for `p1` (source) and `p0` (target).
pub fn weight3_system(p0: Weight3Params, p1: Weight3Params, h: &HodgeVector) -> Result<bool> {
    Ok(weight3_violations(p0, p1, h)?.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PairRecord {
    pub h: HodgeVector,
    pub p1: Weight3Params,
    pub p0: Weight3Params,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRange {
    pub max_h0: u64,
    pub max_h1: u64,
}

/// Outcome of checking the 15-inequality system against the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub range: ScanRange,
    /// Every related pair (reflexive pairs included) satisfies the system.
    pub necessity: bool,
    /// Every pair of distinct classes mod `B_0` with some system-satisfying
    /// representatives carries a weak arrow.
    pub weak_sufficiency: bool,
    /// Distinct full pairs satisfying the system without being related.
    pub counterexamples: Vec<PairRecord>,
    pub necessity_violations: Vec<PairRecord>,
    pub weak_sufficiency_violations: Vec<PairRecord>,
    /// For each row, how many related pairs violate it.
    pub row_violations: Vec<usize>,
    pub hodge_vectors: usize,
    pub related_pairs: usize,
}

struct HScan {
    necessity_violations: Vec<PairRecord>,
    weak_violations: Vec<PairRecord>,
    counterexamples: Vec<PairRecord>,
    row_violations: Vec<usize>,
    related_pairs: usize,
}

/// Scans every `h = (h0, h1, h1, h0)` with `h0 <= max_h0` and `h1 <= max_h1`.
pub fn scan_weight3(engine: &RelationEngine, max_h0: u64, max_h1: u64) -> Result<ScanReport> {
    scan_weight3_with(engine, &WEIGHT3_SYSTEM, max_h0, max_h1)
}

/// [`scan_weight3`] against an arbitrary system in the same column layout.
pub fn scan_weight3_with(
    engine: &RelationEngine,
    system: &[SystemRow],
    max_h0: u64,
    max_h1: u64,
) -> Result<ScanReport> {
    let hs: Vec<HodgeVector> = (0..=max_h0)
        .flat_map(|h0| (0..=max_h1).map(move |h1| HodgeVector::new(vec![h0, h1, h1, h0]).expect("symmetric")))
        .collect();
    let scans = hs.par_iter().map(|h| scan_one(engine, system, h)).collect::<Result<Vec<_>>>()?;

    let mut report = ScanReport {
        range: ScanRange { max_h0, max_h1 },
        necessity: true,
        weak_sufficiency: true,
        counterexamples: Vec::new(),
        necessity_violations: Vec::new(),
        weak_sufficiency_violations: Vec::new(),
        row_violations: vec![0; system.len()],
        hodge_vectors: hs.len(),
        related_pairs: 0,
    };
    for scan in scans {
        report.necessity_violations.extend(scan.necessity_violations);
        report.weak_sufficiency_violations.extend(scan.weak_violations);
        report.counterexamples.extend(scan.counterexamples);
        report.related_pairs += scan.related_pairs;
        for (total, n) in report.row_violations.iter_mut().zip(scan.row_violations) {
            *total += n;
        }
    }
    report.necessity_violations.sort();
    report.weak_sufficiency_violations.sort();
    report.counterexamples.sort();
    report.necessity = report.necessity_violations.is_empty();
    report.weak_sufficiency = report.weak_sufficiency_violations.is_empty();
    Ok(report)
}

fn scan_one(engine: &RelationEngine, system: &[SystemRow], h: &HodgeVector) -> Result<HScan> {
    let full = build_graph(engine, h)?;
    let params: Vec<Weight3Params> = full
        .vertices
        .iter()
        .map(|v| match v {
            Vertex::Diamond(d) => Weight3Params::from_diamond(d),
            Vertex::Class(_) => unreachable!("full graph vertices are diamonds"),
        })
        .collect::<Result<_>>()?;
    let n = params.len();
    let adj = full.adjacency();

    let weak = quotient(&full, 0);
    let class_of: Vec<usize> = full
        .vertices
        .iter()
        .map(|v| {
            let Vertex::Diamond(d) = v else { unreachable!() };
            weak.index_of(&Vertex::Class(reduce_mod_k(d, 0))).expect("class present")
        })
        .collect();

    let mut out = HScan {
        necessity_violations: Vec::new(),
        weak_violations: Vec::new(),
        counterexamples: Vec::new(),
        row_violations: vec![0; system.len()],
        related_pairs: 0,
    };
    let mut weak_flagged = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            let related = i == j || adj[i * n + j];
            let violated = violations_in(system, params[j], params[i], h)?;
            let satisfied = violated.is_empty();
            let record = || PairRecord { h: h.clone(), p1: params[i], p0: params[j] };
            if related {
                out.related_pairs += 1;
                if !satisfied {
                    out.necessity_violations.push(record());
                }
                for row in violated {
                    out.row_violations[row] += 1;
                }
            } else if satisfied {
                out.counterexamples.push(record());
            }
            let (ci, cj) = (class_of[i], class_of[j]);
            if satisfied && ci != cj && !weak.has_edge(ci, cj) && weak_flagged.insert((ci, cj)) {
                out.weak_violations.push(record());
            }
        }
    }
    Ok(out)
}
