//! Hodge vectors, admissible Hodge diamonds and the operations on them.
//!
//! A diamond for a Hodge vector `h = (h^0, ..., h^r)` is an `(r+1) x (r+1)` grid of
//! nonnegative integers `◇^{p,q}`, stored row-major with row index `p`. It is
//! *admissible* when
//!
//! * `◇^{q,p} = ◇^{p,q} = ◇^{r-q,r-p} = ◇^{r-p,r-q}`,
//! * `◇^{p,q} <= ◇^{p+1,q+1}` whenever `p + q < r`,
//! * `Σ_q ◇^{p,q} = h^p` for every `p`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of diamonds a single enumeration may produce.
pub const DEFAULT_LIMIT: usize = 1_000_000;

/// Hodge numbers `(h^0, ..., h^r)` of a weight `r` variation, with `h^p = h^{r-p}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct HodgeVector {
    entries: Vec<u64>,
}

impl HodgeVector {
    pub fn new(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::input("hodge vector must have at least one entry"));
        }
        let r = entries.len() - 1;
        for p in 0..=r / 2 {
            if entries[p] != entries[r - p] {
                return Err(Error::input(format!("hodge vector {entries:?} is not symmetric at index {p}")));
            }
        }
        Ok(HodgeVector { entries })
    }

    /// The weight `r`, one less than the number of entries.
    pub fn weight(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, p: usize) -> u64 {
        self.entries[p]
    }

    /// `(h0, inner, h0)` in weight `inner.weight() + 2`.
    pub fn suspend(inner: &HodgeVector, h0: u64) -> HodgeVector {
        let mut entries = Vec::with_capacity(inner.entries.len() + 2);
        entries.push(h0);
        entries.extend_from_slice(&inner.entries);
        entries.push(h0);
        HodgeVector { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }
}

impl TryFrom<Vec<u64>> for HodgeVector {
    type Error = Error;

    fn try_from(entries: Vec<u64>) -> Result<Self> {
        HodgeVector::new(entries)
    }
}

impl From<HodgeVector> for Vec<u64> {
    fn from(h: HodgeVector) -> Self {
        h.entries
    }
}

impl FromStr for HodgeVector {
    type Err = Error;

    /// Parses comma-separated integers such as `1,2,1`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|part| {
                part.trim().parse::<u64>().map_err(|_| Error::input(format!("bad hodge number {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        HodgeVector::new(entries)
    }
}

impl fmt::Display for HodgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Returns a description of the first admissibility failure, or `None` if admissible.
fn admissibility_violation(h: &HodgeVector, n: usize, at: impl Fn(usize, usize) -> u64) -> Option<String> {
    let r = n - 1;
    for p in 0..n {
        for q in 0..n {
            let x = at(p, q);
            if x != at(q, p) || x != at(r - q, r - p) || x != at(r - p, r - q) {
                return Some(format!("symmetry fails at ({p},{q})"));
            }
            if p + q < r && x > at(p + 1, q + 1) {
                return Some(format!("monotonicity fails at ({p},{q})"));
            }
        }
    }
    for p in 0..n {
        let sum: u64 = (0..n).map(|q| at(p, q)).sum();
        if sum != h.get(p) {
            return Some(format!("column {p} sums to {sum}, expected {}", h.get(p)));
        }
    }
    None
}

/// Checks the three admissibility conditions on a raw grid, `rows[p][q] = ◇^{p,q}`.
pub fn is_admissible(h: &HodgeVector, rows: &[Vec<u64>]) -> Result<bool> {
    check_shape(h, rows)?;
    Ok(admissibility_violation(h, rows.len(), |p, q| rows[p][q]).is_none())
}

fn check_shape(h: &HodgeVector, rows: &[Vec<u64>]) -> Result<()> {
    let n = h.weight() + 1;
    if rows.len() != n || rows.iter().any(|row| row.len() != n) {
        let shape: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(Error::Dimension { expected: n, found: format!("row lengths {shape:?}") });
    }
    Ok(())
}

/// An admissible Hodge diamond together with its Hodge vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "DiamondJson", into = "DiamondJson")]
pub struct HodgeDiamond {
    h: HodgeVector,
    entries: Vec<u64>,
}

impl HodgeDiamond {
    /// Validates the grid and wraps it. Fails unless the grid is admissible for `h`.
    pub fn new(h: HodgeVector, rows: Vec<Vec<u64>>) -> Result<Self> {
        check_shape(&h, &rows)?;
        if let Some(reason) = admissibility_violation(&h, rows.len(), |p, q| rows[p][q]) {
            return Err(Error::input(format!("diamond is not admissible for {h}: {reason}")));
        }
        Ok(HodgeDiamond { h, entries: rows.into_iter().flatten().collect() })
    }

    fn from_flat(h: HodgeVector, entries: Vec<u64>) -> Self {
        let d = HodgeDiamond { h, entries };
        debug_assert!(
            admissibility_violation(&d.h, d.size(), |p, q| d.get(p, q)).is_none(),
            "constructed an inadmissible diamond"
        );
        d
    }

    pub fn hodge_vector(&self) -> &HodgeVector {
        &self.h
    }

    pub fn weight(&self) -> usize {
        self.h.weight()
    }

    fn size(&self) -> usize {
        self.h.weight() + 1
    }

    /// `◇^{p,q}`.
    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.entries[p * self.size() + q]
    }

    pub fn flat(&self) -> &[u64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        self.entries.chunks(self.size()).map(<[u64]>::to_vec).collect()
    }

    /// Column `p`, i.e. `(◇^{p,0}, ..., ◇^{p,r})`.
    pub fn column(&self, p: usize) -> &[u64] {
        let n = self.size();
        &self.entries[p * n..(p + 1) * n]
    }

    /// True when every entry off the antidiagonal vanishes.
    pub fn is_pure(&self) -> bool {
        let r = self.weight();
        (0..=r).all(|p| (0..=r).all(|q| p + q == r || self.get(p, q) == 0))
    }

    pub fn primitive_decomposition(&self) -> PrimitiveDecomposition {
        primitive_decomposition(self)
    }
}

#[derive(Serialize, Deserialize)]
struct DiamondJson {
    r: usize,
    h: Vec<u64>,
    entries: Vec<Vec<u64>>,
}

impl TryFrom<DiamondJson> for HodgeDiamond {
    type Error = Error;

    fn try_from(json: DiamondJson) -> Result<Self> {
        let h = HodgeVector::new(json.h)?;
        if h.weight() != json.r {
            return Err(Error::input(format!("weight r={} does not match h={h}", json.r)));
        }
        HodgeDiamond::new(h, json.entries)
    }
}

impl From<HodgeDiamond> for DiamondJson {
    fn from(d: HodgeDiamond) -> Self {
        DiamondJson { r: d.weight(), entries: d.rows(), h: d.h.entries }
    }
}

impl fmt::Display for HodgeDiamond {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in (0..self.size()).rev() {
            let row: Vec<String> = (0..self.size()).map(|p| self.get(p, q).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The undegenerate diamond: `◇^{p,r-p} = h^p` and zero elsewhere.
pub fn pure_diamond(h: &HodgeVector) -> HodgeDiamond {
    let n = h.weight() + 1;
    let mut entries = vec![0; n * n];
    for p in 0..n {
        entries[p * n + (n - 1 - p)] = h.get(p);
    }
    HodgeDiamond::from_flat(h.clone(), entries)
}

/// Every admissible diamond for `h`, in canonical order.
///
/// The order is lexicographic on columns `0..=r/2` concatenated, each read from
/// `q = 0` upward. Columns past the middle are determined by symmetry.
pub fn enumerate_admissible(h: &HodgeVector, limit: usize) -> Result<Vec<HodgeDiamond>> {
    let mut search = Enumeration::new(h, limit);
    search.column(0)?;
    Ok(search.out)
}

/// Backtracking over the fundamental domain `{(p,q) : p <= q, p + q <= r}`.
///
/// Column `p` has free cells `q in p..=r-p`; every other cell in the column is a
/// mirror of a cell in an earlier column. Monotonicity only ever bounds a free cell
/// from below by the cell diagonally before it, so the only constraints left are the
/// column sums.
struct Enumeration<'a> {
    h: &'a HodgeVector,
    n: usize,
    grid: Vec<u64>,
    limit: usize,
    out: Vec<HodgeDiamond>,
}

impl<'a> Enumeration<'a> {
    fn new(h: &'a HodgeVector, limit: usize) -> Self {
        let n = h.weight() + 1;
        Enumeration { h, n, grid: vec![0; n * n], limit, out: Vec::new() }
    }

    fn column(&mut self, p: usize) -> Result<()> {
        let r = self.n - 1;
        if p > r / 2 {
            return self.emit();
        }
        let n = self.n;
        let mut fixed = 0u64;
        for q in 0..n {
            if q < p {
                self.grid[p * n + q] = self.grid[q * n + p];
                fixed += self.grid[p * n + q];
            } else if p + q > r {
                self.grid[p * n + q] = self.grid[(r - q) * n + (r - p)];
                fixed += self.grid[p * n + q];
            }
        }
        let Some(target) = self.h.get(p).checked_sub(fixed) else {
            return Ok(());
        };
        let lower: Vec<u64> = (p..=r - p).map(|q| if p == 0 { 0 } else { self.grid[(p - 1) * n + (q - 1)] }).collect();
        let mut rest: u64 = lower.iter().sum();
        if rest > target {
            return Ok(());
        }
        // `rest` tracks the lower bounds of the cells not yet assigned.
        rest -= lower[0];
        self.free_cell(p, 0, &lower, target, rest)
    }

    fn free_cell(&mut self, p: usize, i: usize, lower: &[u64], remaining: u64, rest: u64) -> Result<()> {
        let q = p + i;
        let idx = p * self.n + q;
        if i + 1 == lower.len() {
            self.grid[idx] = remaining;
            return self.column(p + 1);
        }
        let next_rest = rest - lower[i + 1];
        for value in lower[i]..=remaining - rest {
            self.grid[idx] = value;
            self.free_cell(p, i + 1, lower, remaining - value, next_rest)?;
        }
        Ok(())
    }

    fn emit(&mut self) -> Result<()> {
        let n = self.n;
        let r = n - 1;
        let mut entries = self.grid.clone();
        for p in r / 2 + 1..n {
            for q in 0..n {
                entries[p * n + q] = entries[(r - p) * n + (r - q)];
            }
        }
        if self.out.len() == self.limit {
            return Err(Error::EnumerationLimit { limit: self.limit });
        }
        self.out.push(HodgeDiamond::from_flat(self.h.clone(), entries));
        Ok(())
    }
}

/// Primitive Hodge numbers `P_w` of a diamond, one Hodge vector per weight `w = 0..=r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimitiveDecomposition {
    weight: usize,
    parts: Vec<HodgeVector>,
}

impl PrimitiveDecomposition {
    pub fn weight(&self) -> usize {
        self.weight
    }

    /// `P_w`, a Hodge vector of weight `w`.
    pub fn part(&self, w: usize) -> &HodgeVector {
        &self.parts[w]
    }

    pub fn parts(&self) -> &[HodgeVector] {
        &self.parts
    }

    /// `Σ_w Σ_{a=0}^{r-w} P_w(-a)` as a flat `(r+1)^2` grid.
    pub fn reconstruct(&self) -> Vec<u64> {
        let r = self.weight;
        let n = r + 1;
        let mut grid = vec![0; n * n];
        for (w, part) in self.parts.iter().enumerate() {
            for a in 0..=r - w {
                let cells = shift(part, a, r).expect("shift within range");
                for (p, q, x) in cells.cells {
                    grid[p * n + q] += x;
                }
            }
        }
        grid
    }
}

/// `P_w^{p,w-p} = ◇^{p,w-p} - ◇^{p-1,w-p-1}` for every `w <= r`.
pub fn primitive_decomposition(d: &HodgeDiamond) -> PrimitiveDecomposition {
    let r = d.weight();
    let parts = (0..=r)
        .map(|w| {
            let entries = (0..=w)
                .map(|p| {
                    let below = if p == 0 || p == w { 0 } else { d.get(p - 1, w - p - 1) };
                    d.get(p, w - p) - below
                })
                .collect();
            HodgeVector::new(entries).expect("primitive parts of an admissible diamond are symmetric")
        })
        .collect();
    PrimitiveDecomposition { weight: r, parts }
}

/// Nonzero cells `(p, q, value)` inside an `(r+1) x (r+1)` grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseGrid {
    pub size: usize,
    pub cells: Vec<(usize, usize, u64)>,
}

/// `P(-a)`: places `P^{p,w-p}` at `(p+a, w-p+a)` inside weight `r`.
pub fn shift(part: &HodgeVector, a: usize, r: usize) -> Result<SparseGrid> {
    let w = part.weight();
    if w > r {
        return Err(Error::input(format!("primitive weight {w} exceeds ambient weight {r}")));
    }
    if a > r - w {
        return Err(Error::ShiftOutOfRange { shift: a, max: r - w });
    }
    let cells = (0..=w).filter(|&p| part.get(p) != 0).map(|p| (p + a, w - p + a, part.get(p))).collect();
    Ok(SparseGrid { size: r + 1, cells })
}

/// A diamond known only outside the box `B_k = [k+1, r-k-1]^2`.
///
/// The stored data are the columns `0..=min(k, r)`; everything else outside `B_k` is
/// recovered by symmetry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiamondClass {
    pub r: usize,
    pub h: HodgeVector,
    pub k: usize,
    pub columns: Vec<Vec<u64>>,
}

impl DiamondClass {
    /// True when the stored columns `0..k` (the region outside `B_{k-1}`) are pure.
    pub fn is_pure_outside_previous_box(&self) -> bool {
        let r = self.r;
        self.columns
            .iter()
            .take(self.k)
            .enumerate()
            .all(|(p, col)| col.iter().enumerate().all(|(q, &x)| p + q == r || x == 0))
    }

    /// Column 0: `q ↦ ◇^{0,q}`.
    pub fn profile_values(&self) -> &[u64] {
        &self.columns[0]
    }
}

/// Forgets everything inside `B_k`.
pub fn reduce_mod_k(d: &HodgeDiamond, k: usize) -> DiamondClass {
    let r = d.weight();
    let columns = (0..=k.min(r)).map(|p| d.column(p).to_vec()).collect();
    DiamondClass { r, h: d.h.clone(), k, columns }
}

/// True when `(p, q)` lies in `B_k = [k+1, r-k-1]^2`.
pub fn in_box(r: usize, k: usize, p: usize, q: usize) -> bool {
    let lo = k + 1;
    lo + k < r && (lo..r - k).contains(&p) && (lo..r - k).contains(&q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hv(s: &str) -> HodgeVector {
        s.parse().unwrap()
    }

    fn weight2(h: &HodgeVector, a: u64, b: u64) -> Vec<Vec<u64>> {
        let (h0, h1) = (h.get(0), h.get(1));
        let c = h0 - a - b;
        vec![vec![a, b, c], vec![b, h1 - 2 * b, b], vec![c, b, a]]
    }

    #[test]
    fn hodge_vector_rejects_asymmetry() {
        assert!(HodgeVector::new(vec![1, 2, 3]).is_err());
        assert!(HodgeVector::new(vec![]).is_err());
        assert!("1,x,1".parse::<HodgeVector>().is_err());
        assert_eq!(hv("2, 5, 2").weight(), 2);
    }

    #[test]
    fn pure_diamonds() {
        let d = pure_diamond(&hv("1,2,1"));
        assert_eq!(d.rows(), vec![vec![0, 0, 1], vec![0, 2, 0], vec![1, 0, 0]]);
        assert_eq!(pure_diamond(&hv("1")).rows(), vec![vec![1]]);
        let d = pure_diamond(&hv("3,37,3"));
        assert_eq!((d.get(0, 2), d.get(2, 0), d.get(1, 1)), (3, 3, 37));
        assert!(d.is_pure());
    }

    #[test]
    fn admissibility_examples() {
        let h = hv("1,2,1");
        assert!(is_admissible(&h, &pure_diamond(&h).rows()).unwrap());
        assert!(is_admissible(&h, &weight2(&h, 1, 0)).unwrap());
        let h = hv("1,0,1");
        let grid = vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 1]];
        assert!(!is_admissible(&h, &grid).unwrap());
        assert!(matches!(is_admissible(&h, &[vec![1, 0], vec![0, 1]]), Err(Error::Dimension { expected: 3, .. })));
    }

    #[test]
    fn enumeration_counts() {
        let h = hv("1,2,1");
        let ds = enumerate_admissible(&h, 10).unwrap();
        let expected: Vec<_> = [(0, 0), (0, 1), (1, 0)].iter().map(|&(a, b)| weight2(&h, a, b)).collect();
        assert_eq!(ds.iter().map(HodgeDiamond::rows).collect::<Vec<_>>(), expected);
        assert_eq!(enumerate_admissible(&hv("1,0,1"), 10).unwrap().len(), 1);
        let ds = enumerate_admissible(&hv("1,1"), 10).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[1].rows(), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(enumerate_admissible(&hv("0"), 10).unwrap().len(), 1);
    }

    #[test]
    fn enumeration_limit() {
        let h = hv("1,2,1");
        assert_eq!(enumerate_admissible(&h, 3).unwrap().len(), 3);
        assert_eq!(enumerate_admissible(&h, 2), Err(Error::EnumerationLimit { limit: 2 }));
    }

    #[test]
    fn primitive_parts() {
        let h = hv("1,2,1");
        let pure = primitive_decomposition(&pure_diamond(&h));
        assert_eq!(pure.part(2), &h);
        assert!(pure.part(1).is_zero() && pure.part(0).is_zero());

        let d = HodgeDiamond::new(h.clone(), weight2(&h, 0, 1)).unwrap();
        let dec = d.primitive_decomposition();
        assert_eq!(dec.part(1).entries(), &[1, 1]);
        assert_eq!(dec.part(2).entries(), &[0, 0, 0]);
        assert_eq!(dec.part(0).entries(), &[0]);
        assert_eq!(dec.reconstruct(), d.flat());

        let d = HodgeDiamond::new(h.clone(), weight2(&h, 1, 0)).unwrap();
        let dec = d.primitive_decomposition();
        assert_eq!(dec.part(0).entries(), &[1]);
        assert_eq!(dec.part(2).entries(), &[0, 1, 0]);
        assert_eq!(dec.reconstruct(), d.flat());
    }

    #[test]
    fn shifts() {
        let p = hv("1,1");
        assert_eq!(shift(&p, 0, 3).unwrap().cells, vec![(0, 1, 1), (1, 0, 1)]);
        assert_eq!(shift(&p, 1, 3).unwrap().cells, vec![(1, 2, 1), (2, 1, 1)]);
        assert_eq!(shift(&hv("1"), 2, 2).unwrap().cells, vec![(2, 2, 1)]);
        assert_eq!(shift(&p, 3, 3), Err(Error::ShiftOutOfRange { shift: 3, max: 2 }));
    }

    #[test]
    fn reduction_levels() {
        let h = hv("1,2,1");
        let ds = enumerate_admissible(&h, 10).unwrap();
        let classes: std::collections::BTreeSet<_> = ds.iter().map(|d| reduce_mod_k(d, 0)).collect();
        assert_eq!(classes.len(), 3);

        // weight 3, k = 0 forgets d = ◇^{1,1} - ◇^{0,0}
        let h = hv("1,2,2,1");
        let ds = enumerate_admissible(&h, 100).unwrap();
        let classes: std::collections::BTreeSet<_> = ds.iter().map(|d| reduce_mod_k(d, 0)).collect();
        assert!(classes.len() < ds.len());
        // k = 1 leaves an empty box
        let classes: std::collections::BTreeSet<_> = ds.iter().map(|d| reduce_mod_k(d, 1)).collect();
        assert_eq!(classes.len(), ds.len());
        assert!(!in_box(3, 1, 1, 1) && !in_box(3, 1, 2, 2));
        assert!(in_box(3, 0, 1, 2) && !in_box(3, 0, 0, 2));
    }

    #[test]
    fn diamond_json_round_trip() {
        let h = hv("1,2,1");
        let d = HodgeDiamond::new(h.clone(), weight2(&h, 0, 1)).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"r":2,"h":[1,2,1],"entries":[[0,1,0],[1,0,1],[0,1,0]]}"#);
        assert_eq!(serde_json::from_str::<HodgeDiamond>(&json).unwrap(), d);
        assert!(
            serde_json::from_str::<HodgeDiamond>(r#"{"r":2,"h":[1,0,1],"entries":[[1,0,0],[0,0,0],[0,0,1]]}"#).is_err()
        );
        assert!(
            serde_json::from_str::<HodgeDiamond>(r#"{"r":1,"h":[1,0,1],"entries":[[0,0,1],[0,0,0],[1,0,0]]}"#).is_err()
        );
    }
}
