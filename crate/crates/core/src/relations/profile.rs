use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::diamond::{DiamondClass, HodgeVector};
use crate::error::{Error, Result};
use crate::relations::engine::RelationEngine;
use crate::relations::graph::{build_circ_graph, Vertex};

/// A function `a: {0..r} → Z≥0` of total mass `m`, ordered by partial sums.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ColumnProfile {
    values: Vec<u64>,
}

impl ColumnProfile {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::input("column profile needs at least one value"));
        }
        Ok(ColumnProfile { values })
    }

    pub fn weight(&self) -> usize {
        self.values.len() - 1
    }

    pub fn mass(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// `A(ℓ) = Σ_{k<=ℓ} a(k)`.
    pub fn partial_sums(&self) -> Vec<u64> {
        self.values
            .iter()
            .scan(0, |acc, &x| {
                *acc += x;
                Some(*acc)
            })
            .collect()
    }
}

/// `a1 ⊑ a0` iff `A1(ℓ) <= A0(ℓ)` for every `ℓ`.
pub fn profile_order(a1: &ColumnProfile, a0: &ColumnProfile) -> Result<bool> {
    if a1.weight() != a0.weight() || a1.mass() != a0.mass() {
        return Err(Error::input(format!("profiles differ in weight or mass: {:?} vs {:?}", a1.values, a0.values)));
    }
    Ok(a1.partial_sums().iter().zip(a0.partial_sums()).all(|(x, y)| *x <= y))
}

/// `𝒜^r(m)`: every profile of weight `r` and mass `m`, in lexicographic order.
pub fn all_profiles(r: usize, m: u64) -> Vec<ColumnProfile> {
    fn fill(slots: usize, m: u64, prefix: &mut Vec<u64>, out: &mut Vec<ColumnProfile>) {
        if slots == 1 {
            prefix.push(m);
            out.push(ColumnProfile { values: prefix.clone() });
            prefix.pop();
            return;
        }
        for x in 0..=m {
            prefix.push(x);
            fill(slots - 1, m - x, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    fill(r + 1, m, &mut Vec::with_capacity(r + 1), &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    B,
    C,
}

/// The lower bounds `b^r` and `c^r` on Hodge vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundVector {
    pub kind: BoundKind,
    pub values: Vec<u64>,
}

impl BoundVector {
    /// `h >= scale · self` pointwise.
    pub fn dominated_by(&self, h: &HodgeVector, scale: u64) -> bool {
        h.weight() + 1 == self.values.len() && h.entries().iter().zip(&self.values).all(|(x, b)| *x >= scale * b)
    }
}

/// `b^r(i) = 2i+1 = b^r(r-i)` for `i < r/2` and `b^r(r/2) = r`;
/// `c^r = (1, 2, ..., 2, 1)`.
pub fn bound_vector(r: usize, kind: BoundKind) -> BoundVector {
    let values = (0..=r)
        .map(|i| match kind {
            BoundKind::B => {
                let j = i.min(r - i);
                if 2 * j == r {
                    r as u64
                } else {
                    2 * j as u64 + 1
                }
            }
            BoundKind::C => {
                if i == 0 || i == r {
                    1
                } else {
                    2
                }
            }
        })
        .collect();
    BoundVector { kind, values }
}

/// Maximality and saturation of `R°_0(h)`, computed directly and from the bounds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SaturationReport {
    pub h: HodgeVector,
    pub maximal_direct: bool,
    pub saturated_direct: bool,
    pub maximal_bound: bool,
    pub saturated_bound: bool,
    pub missing_profiles: Vec<Vec<u64>>,
    pub missing_arrows: Vec<(Vec<u64>, Vec<u64>)>,
    pub disagreements: Vec<String>,
}

pub fn check_maximal_saturated(engine: &RelationEngine, h: &HodgeVector) -> Result<SaturationReport> {
    let r = h.weight();
    let h0 = h.get(0);
    if h0 == 0 {
        return Err(Error::input("maximality is only defined for h^0 > 0"));
    }
    let graph = build_circ_graph(engine, h, 0)?;
    let profiles: BTreeMap<ColumnProfile, usize> =
        graph.vertices.iter().enumerate().map(|(i, v)| (ColumnProfile { values: v.profile_values() }, i)).collect();

    let universe = all_profiles(r, h0);
    let missing_profiles: Vec<Vec<u64>> =
        universe.iter().filter(|a| !profiles.contains_key(*a)).map(|a| a.values.clone()).collect();
    let maximal_direct = missing_profiles.is_empty() && profiles.len() == universe.len();

    let mut missing_arrows = Vec::new();
    let mut extra_arrows = false;
    if maximal_direct {
        let edges: BTreeSet<(usize, usize)> = graph.edges.iter().copied().collect();
        for (a1, &i) in &profiles {
            for (a0, &j) in &profiles {
                let expected = i != j && profile_order(a1, a0)?;
                let present = edges.contains(&(i, j));
                if expected && !present {
                    missing_arrows.push((a1.values.clone(), a0.values.clone()));
                }
                extra_arrows |= present && !expected;
            }
        }
    }
    let saturated_direct = maximal_direct && missing_arrows.is_empty() && !extra_arrows;

    let maximal_bound = bound_vector(r, BoundKind::C).dominated_by(h, h0);
    let saturated_bound = bound_vector(r, BoundKind::B).dominated_by(h, h0);
    let mut disagreements = Vec::new();
    if maximal_direct != maximal_bound {
        disagreements.push(format!("maximal: direct={maximal_direct}, bound={maximal_bound}"));
    }
    if saturated_direct != saturated_bound {
        disagreements.push(format!("saturated: direct={saturated_direct}, bound={saturated_bound}"));
    }
    Ok(SaturationReport {
        h: h.clone(),
        maximal_direct,
        saturated_direct,
        maximal_bound,
        saturated_bound,
        missing_profiles,
        missing_arrows,
        disagreements,
    })
}

/// Checks that `R°_{k-1}(inner)` and `R°_k((h0, inner, h0))` are the same graph under
/// the correspondence that drops the pure column 0 and shifts indices down by one.
pub fn suspension_check(engine: &RelationEngine, inner: &HodgeVector, h0: u64, k: usize) -> Result<bool> {
    if k == 0 {
        return Err(Error::input("suspension needs level k >= 1"));
    }
    let h = HodgeVector::suspend(inner, h0);
    let small = build_circ_graph(engine, inner, k - 1)?;
    let big = build_circ_graph(engine, &h, k)?;
    if small.len() != big.len() {
        return Ok(false);
    }
    let index: BTreeMap<&Vertex, usize> = small.vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut image = Vec::with_capacity(big.len());
    for v in &big.vertices {
        let Vertex::Class(class) = v else { return Ok(false) };
        let Some(desuspended) = desuspend(class, inner) else { return Ok(false) };
        match index.get(&Vertex::Class(desuspended)) {
            Some(&i) => image.push(i),
            None => return Ok(false),
        }
    }
    if image.iter().collect::<BTreeSet<_>>().len() != image.len() {
        return Ok(false);
    }
    let mapped: BTreeSet<(usize, usize)> = big.edges.iter().map(|&(i, j)| (image[i], image[j])).collect();
    Ok(mapped.into_iter().eq(small.edges.iter().copied()))
}

/// Drops column 0 and the first and last entry of the remaining columns; `None` when
/// the dropped data are not those of a suspension.
fn desuspend(class: &DiamondClass, inner: &HodgeVector) -> Option<DiamondClass> {
    let r = class.r;
    if r < 2 || class.k == 0 {
        return None;
    }
    let mut columns = Vec::with_capacity(class.columns.len() - 1);
    for (p, col) in class.columns.iter().enumerate() {
        if p == 0 {
            if col.iter().enumerate().any(|(q, &x)| q != r && x != 0) {
                return None;
            }
            continue;
        }
        if col[0] != 0 || col[r] != 0 {
            return None;
        }
        columns.push(col[1..r].to_vec());
    }
    Some(DiamondClass { r: r - 2, h: inner.clone(), k: class.k - 1, columns })
}
