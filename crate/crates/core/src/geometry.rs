//! Hodge numbers of middle primitive cohomology for smooth hypersurfaces of degree `d`
//! in `P^n` and for double covers of `P^n` branched along a smooth hypersurface of
//! degree `2d`, and the bounds they satisfy.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::diamond::HodgeVector;
use crate::error::{Error, Result};
use crate::relations::{bound_vector, BoundKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Hypersurface,
    DoubleCover,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Hypersurface => "hypersurface",
            Family::DoubleCover => "double-cover",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hypersurface" => Ok(Family::Hypersurface),
            "double-cover" | "double_cover" => Ok(Family::DoubleCover),
            _ => Err(Error::input(format!("unknown family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: u32,
    pub d: u32,
}

impl FamilySpec {
    /// Requires `n >= 1` and `d >= n + 1`.
    pub fn new(family: Family, n: u32, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("ambient dimension n must be at least 1"));
        }
        if d < n + 1 {
            return Err(Error::input(format!("degree d = {d} must be at least n + 1 = {}", n + 1)));
        }
        Ok(FamilySpec { family, n, d })
    }

    pub fn weight(&self) -> usize {
        match self.family {
            Family::Hypersurface => self.n as usize - 1,
            Family::DoubleCover => self.n as usize,
        }
    }

    fn validate(&self) -> Result<()> {
        FamilySpec::new(self.family, self.n, self.d).map(|_| ())
    }

    /// Exponent of `t` whose coefficient is `h^p`, and the top degree of the base polynomial.
    fn exponent(&self, p: usize) -> (u64, u64) {
        let (n, d, p) = (self.n as u64, self.d as u64, p as u64);
        match self.family {
            Family::Hypersurface => ((p + 1) * d - n - 1, d - 2),
            Family::DoubleCover => ((2 * p + 1) * d - n - 1, 2 * d - 2),
        }
    }
}

/// Coefficients of `(1 + t + ... + t^top)^power` up to `t^max`.
fn truncated_power(top: u64, power: u32, max: u64) -> Result<Vec<u128>> {
    let len = max as usize + 1;
    let mut acc = vec![0u128; len];
    acc[0] = 1;
    for _ in 0..power {
        // Multiplying by 1 + ... + t^top is a sliding window sum.
        let mut next = vec![0u128; len];
        let mut window: u128 = 0;
        for i in 0..len {
            window = window.checked_add(acc[i]).ok_or_else(|| Error::Overflow("polynomial coefficient".into()))?;
            if i as u64 > top {
                window -= acc[i - top as usize - 1];
            }
            next[i] = window;
        }
        acc = next;
    }
    Ok(acc)
}

fn to_u64(x: u128, what: &str) -> Result<u64> {
    u64::try_from(x).map_err(|_| Error::Overflow(format!("{what} exceeds 64 bits")))
}

pub fn hodge_vector(spec: &FamilySpec) -> Result<HodgeVector> {
    spec.validate()?;
    let r = spec.weight();
    let (max, top) = spec.exponent(r);
    let coeffs = truncated_power(top, spec.n + 1, max)?;
    let entries =
        (0..=r).map(|p| to_u64(coeffs[spec.exponent(p).0 as usize], "hodge number")).collect::<Result<Vec<_>>>()?;
    HodgeVector::new(entries)
}

fn binomial(n: u64, k: u64) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 after the multiplication
        acc = acc.checked_mul((n - i) as u128).ok_or_else(|| Error::Overflow("binomial".into()))? / (i as u128 + 1);
    }
    Ok(acc)
}

/// `h^0 = C(d-1, n)` and `h^1 = C(2d-1, n) - (n+1) C(d, n)` for hypersurfaces,
/// `C(3d-1, n) - (n+1) C(d, n)` for double covers.
///
/// `h^1` is signed: for curves (`n = 1`, weight 0) there is no `h^1` and the formula
/// can go negative.
pub fn closed_form_h0_h1(spec: &FamilySpec) -> Result<(u64, i64)> {
    spec.validate()?;
    let (n, d) = (spec.n as u64, spec.d as u64);
    let h0 = binomial(d - 1, n)?;
    let lead = match spec.family {
        Family::Hypersurface => binomial(2 * d - 1, n)?,
        Family::DoubleCover => binomial(3 * d - 1, n)?,
    };
    let correction = binomial(d, n)?.checked_mul(n as u128 + 1).ok_or_else(|| Error::Overflow("binomial".into()))?;
    let signed = |x: u128| i128::try_from(x).map_err(|_| Error::Overflow("binomial".into()));
    let h1 = i64::try_from(signed(lead)? - signed(correction)?)
        .map_err(|_| Error::Overflow("h^1 exceeds 64 bits".into()))?;
    Ok((to_u64(h0, "h^0")?, h1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub h: HodgeVector,
    pub unimodal: bool,
    /// `h^1 >= r h^0`, vacuous in weight 0.
    pub h1_bound: bool,
    /// `h >= h^0 b^r`.
    pub b_bound: bool,
    /// `unimodal && h1_bound` implies `b_bound`.
    pub implication: bool,
}

impl BoundsReport {
    pub fn all_true(&self) -> bool {
        self.unimodal && self.h1_bound && self.b_bound && self.implication
    }
}

fn is_unimodal(v: &[u64]) -> bool {
    let peak = v.windows(2).take_while(|w| w[0] <= w[1]).count();
    v[peak..].windows(2).all(|w| w[0] >= w[1])
}

pub fn check_bounds(spec: &FamilySpec) -> Result<BoundsReport> {
    let h = hodge_vector(spec)?;
    let r = h.weight();
    let h0 = h.get(0);
    let unimodal = is_unimodal(h.entries());
    let h1_bound = r == 0 || h.get(1) >= r as u64 * h0;
    let b_bound = bound_vector(r, BoundKind::B).dominated_by(&h, h0);
    Ok(BoundsReport { h, unimodal, h1_bound, b_bound, implication: !(unimodal && h1_bound) || b_bound })
}

/// `f_n(d) = Π_{j=1}^n (1 + d/(d-j)) - (n+1)(1 + n/(d-n)) - n + 1`, exactly.
///
/// For integer `d` this is `h^1/h^0 - (n-1)` of the hypersurface family.
pub fn f_n(n: u32, d: &BigRational) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::input("f_n needs n >= 1"));
    }
    let nr = BigRational::from_integer(BigInt::from(n));
    if d <= &nr {
        return Err(Error::Domain(format!("f_{n} has a pole at d = {n}; got d = {d}")));
    }
    let one = BigRational::one();
    let product = (1..=n).fold(one.clone(), |acc, j| {
        let j = BigRational::from_integer(BigInt::from(j));
        acc * (&one + d / (d - j))
    });
    Ok(product - (&nr + &one) * (&one + &nr / (d - &nr)) - &nr + &one)
}

/// `f_n` at an integer argument.
pub fn f_n_int(n: u32, d: u64) -> Result<BigRational> {
    f_n(n, &BigRational::from_integer(BigInt::from(d)))
}
