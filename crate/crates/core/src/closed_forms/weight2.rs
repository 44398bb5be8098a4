//! Weight 2: `h = (h^0, h^1, h^0)`, diamonds parameterized by
//! `a = ◇^{0,0}` and `b = ◇^{0,1}`.

use serde::{Deserialize, Serialize};

use crate::diamond::{HodgeDiamond, HodgeVector};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight2Params {
    pub a: u64,
    pub b: u64,
}

fn check_weight(h: &HodgeVector) -> Result<(u64, u64)> {
    if h.weight() != 2 {
        return Err(Error::input(format!("expected a weight 2 hodge vector, got {h}")));
    }
    Ok((h.get(0), h.get(1)))
}

impl Weight2Params {
    pub fn from_diamond(d: &HodgeDiamond) -> Result<Self> {
        check_weight(d.hodge_vector())?;
        Ok(Weight2Params { a: d.get(0, 0), b: d.get(0, 1) })
    }

    /// `a + 2b <= h^1` and `a + b <= h^0`.
    pub fn is_admissible(&self, h: &HodgeVector) -> Result<bool> {
        let (h0, h1) = check_weight(h)?;
        Ok(self.a + 2 * self.b <= h1 && self.a + self.b <= h0)
    }

    pub fn to_diamond(&self, h: &HodgeVector) -> Result<HodgeDiamond> {
        if !self.is_admissible(h)? {
            return Err(Error::input(format!("(a,b)=({},{}) is not admissible for {h}", self.a, self.b)));
        }
        let (h0, h1) = (h.get(0), h.get(1));
        let Weight2Params { a, b } = *self;
        let c = h0 - a - b;
        HodgeDiamond::new(h.clone(), vec![vec![a, b, c], vec![b, h1 - 2 * b, b], vec![c, b, a]])
    }
}

/// `(a1,b1) ⪯ (a0,b0)` iff `a1 <= a0`, `a1 + b1 <= a0 + b0` and `a0 + b0 <= h^1 - b1`.
pub fn weight2_relation(h: &HodgeVector, p1: Weight2Params, p0: Weight2Params) -> Result<bool> {
    for p in [p1, p0] {
        if !p.is_admissible(h)? {
            return Err(Error::input(format!("(a,b)=({},{}) is not admissible for {h}", p.a, p.b)));
        }
    }
    let h1 = h.get(1);
    Ok(p1.a <= p0.a && p1.a + p1.b <= p0.a + p0.b && p0.a + p0.b + p1.b <= h1)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PosetClass {
    Linear,
    PosetNotLinear,
    NotPoset,
}

/// Classifies `R(h)` in weight 2.
///
/// Linear when `h^0 = 1`, `h^1 = 1` or `h = (2,3,2)`; a non-linear poset when
/// `h^0 >= 2` and `h^1 >= 2h^0 - 1`; otherwise not a poset. When `h^0 = 0` or
/// `h^1 = 0` the pure diamond is the only vertex and the order is trivially linear.
pub fn weight2_poset_class(h: &HodgeVector) -> Result<PosetClass> {
    let (h0, h1) = check_weight(h)?;
    Ok(if h0 <= 1 || h1 <= 1 || (h0, h1) == (2, 3) {
        PosetClass::Linear
    } else if h1 + 1 >= 2 * h0 {
        PosetClass::PosetNotLinear
    } else {
        PosetClass::NotPoset
    })
}

/// Brute force over the counts `(k, l, m)` of the elementary degenerations: `k` copies
/// taking `(1,1,1)` to `◇^{0,0}=◇^{1,1}=◇^{2,2}=1`, `l` copies taking `(1,2,1)` to
/// `◇^{1,0}=◇^{0,1}=◇^{2,1}=◇^{1,2}=1`, and `m` copies taking the latter to
/// `◇^{0,0}=◇^{2,2}=1, ◇^{1,1}=2`.
#[cfg(test)]
pub(crate) fn weight2_relation_by_counts(h: &HodgeVector, p1: Weight2Params, p0: Weight2Params) -> bool {
    let (h0, h1) = (h.get(0) as i64, h.get(1) as i64);
    let (a1, b1, a0, b0) = (p1.a as i64, p1.b as i64, p0.a as i64, p0.b as i64);
    let bound = h0 + h1;
    for k in 0..=bound {
        for l in 0..=bound {
            for m in 0..=b1 {
                let feasible = k + l <= h0 - a1 - b1 && k + 2 * l <= h1 - a1 - 2 * b1;
                if feasible && a0 == a1 + m + k && b0 == b1 + l - m {
                    return true;
                }
            }
        }
    }
    false
}
