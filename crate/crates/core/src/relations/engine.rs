use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use dashmap::DashMap;
use serde::Serialize;

use crate::diamond::{enumerate_admissible, HodgeDiamond, HodgeVector, DEFAULT_LIMIT};
use crate::error::{Error, Result};

/// The per-weight choices certifying `D1 ⪯ D0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub parts: Vec<WitnessPart>,
}

/// An admissible diamond chosen for the primitive part `P_w` of the source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPart {
    pub weight: usize,
    pub primitive: HodgeVector,
    pub diamond: HodgeDiamond,
}

impl Witness {
    /// `Σ_w Σ_{a=0}^{r-w} E_w(-a)` for the chosen diamonds `E_w`.
    pub fn target(&self, r: usize) -> Vec<u64> {
        let n = r + 1;
        let mut grid = vec![0; n * n];
        for part in &self.parts {
            add_block(&mut grid, r, &part.diamond);
        }
        grid
    }
}

/// Adds `Σ_{a=0}^{r-w} E(-a)` into an `(r+1)^2` grid, where `E` has weight `w`.
fn add_block(grid: &mut [u64], r: usize, e: &HodgeDiamond) {
    let n = r + 1;
    let w = e.weight();
    for a in 0..=r - w {
        for p in 0..=w {
            for q in 0..=w {
                grid[(p + a) * n + (q + a)] += e.get(p, q);
            }
        }
    }
}

/// Decides the polarized relation through primitive decompositions.
///
/// `D1 ⪯ D0` iff for each weight `w` there is an admissible diamond `E_w` for the
/// primitive part `P_w` of `D1` with `Σ_w Σ_{a=0}^{r-w} E_w(-a) = D0`. Admissible
/// diamonds per primitive vector and pairwise answers are memoized; the engine is
/// safe to share across threads.
pub struct RelationEngine {
    limit: usize,
    admissible: RwLock<HashMap<HodgeVector, Arc<Vec<HodgeDiamond>>>>,
    pairs: DashMap<(HodgeDiamond, HodgeDiamond), bool>,
}

impl Default for RelationEngine {
    fn default() -> Self {
        RelationEngine::new(DEFAULT_LIMIT)
    }
}

impl RelationEngine {
    pub fn new(limit: usize) -> Self {
        RelationEngine { limit, admissible: RwLock::default(), pairs: DashMap::new() }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// Memoized [`enumerate_admissible`].
    pub fn admissible(&self, h: &HodgeVector) -> Result<Arc<Vec<HodgeDiamond>>> {
        if let Some(found) = self.admissible.read().expect("memo lock").get(h) {
            return Ok(Arc::clone(found));
        }
        let list = Arc::new(enumerate_admissible(h, self.limit)?);
        let mut memo = self.admissible.write().expect("memo lock");
        Ok(Arc::clone(memo.entry(h.clone()).or_insert(list)))
    }

    /// `D1 ⪯ D0`, answered from the pair memo when possible.
    pub fn relates(&self, d1: &HodgeDiamond, d0: &HodgeDiamond) -> Result<bool> {
        let key = (d1.clone(), d0.clone());
        if let Some(known) = self.pairs.get(&key) {
            return Ok(*known);
        }
        let related = self.degeneration(d1, d0)?.is_some();
        self.pairs.insert(key, related);
        Ok(related)
    }

    /// Searches for a witness of `D1 ⪯ D0`; `None` when the two are unrelated.
    pub fn degeneration(&self, d1: &HodgeDiamond, d0: &HodgeDiamond) -> Result<Option<Witness>> {
        if d1.hodge_vector() != d0.hodge_vector() {
            return Err(Error::input(format!("hodge vectors differ: {} vs {}", d1.hodge_vector(), d0.hodge_vector())));
        }
        let r = d1.weight();
        let n = r + 1;
        let target = d0.flat();
        let decomposition = d1.primitive_decomposition();

        // Candidate blocks per weight, heaviest weight first; drop any block that
        // already overshoots the target on its own.
        let mut levels = Vec::with_capacity(n);
        for w in (0..=r).rev() {
            let part = decomposition.part(w);
            let mut blocks = Vec::new();
            for e in self.admissible(part)?.iter() {
                let mut grid = vec![0; n * n];
                add_block(&mut grid, r, e);
                if grid.iter().zip(target).all(|(x, t)| x <= t) {
                    blocks.push((e.clone(), grid));
                }
            }
            if blocks.is_empty() {
                return Ok(None);
            }
            levels.push((w, part.clone(), blocks));
        }

        let mut chosen = Vec::with_capacity(levels.len());
        let mut running = vec![0u64; n * n];
        if !search(&levels, 0, &mut running, target, &mut chosen) {
            return Ok(None);
        }
        let parts = levels
            .iter()
            .zip(chosen)
            .map(|((w, part, blocks), i)| WitnessPart {
                weight: *w,
                primitive: part.clone(),
                diamond: blocks[i].0.clone(),
            })
            .collect();
        Ok(Some(Witness { parts }))
    }
}

type Level = (usize, HodgeVector, Vec<(HodgeDiamond, Vec<u64>)>);

fn search(levels: &[Level], depth: usize, running: &mut [u64], target: &[u64], chosen: &mut Vec<usize>) -> bool {
    if depth == levels.len() {
        return running == target;
    }
    for (i, (_, block)) in levels[depth].2.iter().enumerate() {
        let fits = running.iter().zip(block).zip(target).all(|((x, b), t)| x + b <= *t);
        if !fits {
            continue;
        }
        running.iter_mut().zip(block).for_each(|(x, b)| *x += b);
        chosen.push(i);
        if search(levels, depth + 1, running, target, chosen) {
            return true;
        }
        chosen.pop();
        running.iter_mut().zip(block).for_each(|(x, b)| *x -= b);
    }
    false
}
