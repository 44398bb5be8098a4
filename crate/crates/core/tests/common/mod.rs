//! Exhaustive checks shared by the property suites and the acceptance harness.
//! Each returns the number of cases examined or a description of the first failure.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mhs_relations::closed_forms::{weight2_poset_class, weight2_relation, PosetClass, Weight2Params};
use mhs_relations::geometry::{check_bounds, closed_form_h0_h1, f_n_int, hodge_vector, Family, FamilySpec};
use mhs_relations::relations::{column_profile, quotient};
use mhs_relations::{
    analyze, build_circ_graph, build_graph, enumerate_admissible, profile_order, pure_diamond, reduce_mod_k,
    HodgeDiamond, HodgeVector, RelationEngine, Vertex,
};
use num_rational::BigRational;
use num_traits::Zero;

pub type Check = Result<usize, String>;

/// Every symmetric vector of weight `r` with entries in `0..=max`.
pub fn hodge_vectors(r: usize, max: u64) -> Vec<HodgeVector> {
    let half = r / 2 + 1;
    let mut out = Vec::new();
    let mut prefix = vec![0; half];
    loop {
        let entries: Vec<u64> = (0..=r).map(|i| prefix[i.min(r - i)]).collect();
        out.push(HodgeVector::new(entries).unwrap());
        let mut i = half;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if prefix[i] < max {
                prefix[i] += 1;
                break;
            }
            prefix[i] = 0;
        }
    }
}

pub fn hodge_vectors_up_to(max_r: usize, max: u64) -> Vec<HodgeVector> {
    (0..=max_r).flat_map(|r| hodge_vectors(r, max)).collect()
}

fn compositions(total: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    (0..=total)
        .flat_map(|x| {
            compositions(total - x, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, x);
                rest
            })
        })
        .collect()
}

/// Brute force: every grid whose column `p` sums to `h^p`, filtered by the three
/// conditions written out directly. Grids are flat, index `p * (r+1) + q`.
pub fn brute_force_diamonds(h: &HodgeVector) -> BTreeSet<Vec<u64>> {
    let r = h.weight();
    let n = r + 1;
    let columns: Vec<Vec<Vec<u64>>> = (0..n).map(|p| compositions(h.get(p), n)).collect();
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; n];
    loop {
        let grid: Vec<u64> = (0..n).flat_map(|p| columns[p][choice[p]].iter().copied()).collect();
        let at = |p: usize, q: usize| grid[p * n + q];
        let symmetric = (0..n).all(|p| (0..n).all(|q| at(p, q) == at(q, p) && at(p, q) == at(r - q, r - p)));
        let monotone = (0..n).all(|p| (0..n).all(|q| p + q >= r || at(p, q) <= at(p + 1, q + 1)));
        if symmetric && monotone {
            out.insert(grid);
        }
        let mut p = 0;
        loop {
            if p == n {
                return out;
            }
            choice[p] += 1;
            if choice[p] < columns[p].len() {
                break;
            }
            choice[p] = 0;
            p += 1;
        }
    }
}

fn grid(d: &HodgeDiamond) -> Vec<u64> {
    let n = d.weight() + 1;
    (0..n).flat_map(|p| (0..n).map(move |q| d.get(p, q))).collect()
}

pub fn enumeration_matches_brute_force(max_r: usize, max: u64) -> Check {
    let mut cases = 0;
    for h in hodge_vectors_up_to(max_r, max) {
        let listed = enumerate_admissible(&h, 1_000_000).map_err(|e| e.to_string())?;
        let set: BTreeSet<Vec<u64>> = listed.iter().map(grid).collect();
        if set.len() != listed.len() {
            return Err(format!("{h}: duplicate diamonds in enumeration"));
        }
        for d in &listed {
            if !mhs_relations::is_admissible(&h, &d.rows()).map_err(|e| e.to_string())? {
                return Err(format!("{h}: enumerated diamond fails is_admissible"));
            }
        }
        if set != brute_force_diamonds(&h) {
            return Err(format!("{h}: enumeration differs from brute force"));
        }
        cases += 1;
    }
    Ok(cases)
}

pub fn reconstruction(max_r: usize, max: u64) -> Check {
    let mut cases = 0;
    for h in hodge_vectors_up_to(max_r, max) {
        for d in enumerate_admissible(&h, 1_000_000).map_err(|e| e.to_string())? {
            let parts = d.primitive_decomposition();
            if parts.reconstruct() != d.flat() {
                return Err(format!("{h}: reconstruction fails for\n{d}"));
            }
            cases += 1;
        }
        let pure = pure_diamond(&h).primitive_decomposition();
        let r = h.weight();
        if parts_outside(&pure, r) || pure.part(r) != &h {
            return Err(format!("{h}: pure diamond decomposition not concentrated in weight {r}"));
        }
    }
    Ok(cases)
}

fn parts_outside(p: &mhs_relations::PrimitiveDecomposition, r: usize) -> bool {
    (0..r).any(|w| !p.part(w).is_zero())
}

/// Outside `B_k = [k+1, r-k-1]^2`, computed without the library's helper.
fn outside_box(r: usize, k: usize, p: usize, q: usize) -> bool {
    let inside = |x: usize| x > k && x + k < r;
    !(inside(p) && inside(q))
}

pub fn reduction_fibers(max_r: usize, max: u64) -> Check {
    let mut cases = 0;
    for h in hodge_vectors_up_to(max_r, max) {
        let r = h.weight();
        let ds = enumerate_admissible(&h, 1_000_000).map_err(|e| e.to_string())?;
        for k in 0..=r {
            for d1 in &ds {
                for d0 in &ds {
                    let agree =
                        (0..=r).all(|p| (0..=r).all(|q| !outside_box(r, k, p, q) || d1.get(p, q) == d0.get(p, q)));
                    if agree != (reduce_mod_k(d1, k) == reduce_mod_k(d0, k)) {
                        return Err(format!("{h} k={k}: class equality disagrees with agreement outside B_k"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

pub fn edge_monotonicity(engine: &RelationEngine, max_r: usize, max: u64) -> Check {
    let mut cases = 0;
    for h in hodge_vectors_up_to(max_r, max) {
        let g = build_graph(engine, &h).map_err(|e| e.to_string())?;
        for &(i, j) in &g.edges {
            let (Vertex::Diamond(d1), Vertex::Diamond(d0)) = (&g.vertices[i], &g.vertices[j]) else {
                return Err("full graph with class vertices".into());
            };
            if !profile_order(&column_profile(d1), &column_profile(d0)).map_err(|e| e.to_string())? {
                return Err(format!("{h}: edge {i} -> {j} decreases a partial sum of column 0"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

pub fn reflexivity(engine: &RelationEngine, max_r: usize, max: u64) -> Check {
    let mut cases = 0;
    for h in hodge_vectors_up_to(max_r, max) {
        for d in enumerate_admissible(&h, 1_000_000).map_err(|e| e.to_string())? {
            if !engine.relates(&d, &d).map_err(|e| e.to_string())? {
                return Err(format!("{h}: diamond not related to itself\n{d}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

pub fn witness_validity(engine: &RelationEngine, max_r: usize, max: u64) -> Check {
    let mut cases = 0;
    for h in hodge_vectors_up_to(max_r, max) {
        let r = h.weight();
        let ds = enumerate_admissible(&h, 1_000_000).map_err(|e| e.to_string())?;
        for d1 in &ds {
            let parts = d1.primitive_decomposition();
            for d0 in &ds {
                let witness = engine.degeneration(d1, d0).map_err(|e| e.to_string())?;
                if witness.is_some() != engine.relates(d1, d0).map_err(|e| e.to_string())? {
                    return Err(format!("{h}: degeneration and relates disagree"));
                }
                let Some(w) = witness else { continue };
                for part in &w.parts {
                    let e = &part.diamond;
                    if &part.primitive != parts.part(part.weight)
                        || e.hodge_vector() != &part.primitive
                        || !mhs_relations::is_admissible(e.hodge_vector(), &e.rows()).unwrap()
                    {
                        return Err(format!("{h}: witness part of weight {} is not admissible for P_w", part.weight));
                    }
                }
                // Σ_w Σ_a E_w(-a), summed here independently of the library.
                let n = r + 1;
                let mut sum = vec![0u64; n * n];
                for part in &w.parts {
                    let wt = part.weight;
                    for a in 0..=r - wt {
                        for p in 0..=wt {
                            for q in 0..=wt {
                                sum[(p + a) * n + q + a] += part.diamond.get(p, q);
                            }
                        }
                    }
                }
                if sum != grid(d0) || w.target(r) != grid(d0) {
                    return Err(format!("{h}: witness does not sum to the target"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

/// Weak edges are exactly the images of full edges between distinct classes, and
/// the circ graph is the induced subgraph on classes pure outside `B_{k-1}`.
pub fn quotient_soundness(engine: &RelationEngine, max_r: usize, max: u64) -> Check {
    let mut cases = 0;
    for h in hodge_vectors_up_to(max_r, max) {
        let r = h.weight();
        let full = build_graph(engine, &h).map_err(|e| e.to_string())?;
        let diamonds: Vec<&HodgeDiamond> = full
            .vertices
            .iter()
            .map(|v| match v {
                Vertex::Diamond(d) => d,
                Vertex::Class(_) => unreachable!(),
            })
            .collect();
        for k in 0..=r {
            let weak = quotient(&full, k);
            let classes: BTreeSet<Vertex> = diamonds.iter().map(|d| Vertex::Class(reduce_mod_k(d, k))).collect();
            if weak.vertices.iter().cloned().collect::<BTreeSet<_>>() != classes {
                return Err(format!("{h} k={k}: weak vertices are not the classes"));
            }
            let images: BTreeSet<(Vertex, Vertex)> = full
                .edges
                .iter()
                .map(|&(i, j)| {
                    (Vertex::Class(reduce_mod_k(diamonds[i], k)), Vertex::Class(reduce_mod_k(diamonds[j], k)))
                })
                .filter(|(a, b)| a != b)
                .collect();
            let weak_edges: BTreeSet<(Vertex, Vertex)> =
                weak.edges.iter().map(|&(i, j)| (weak.vertices[i].clone(), weak.vertices[j].clone())).collect();
            if images != weak_edges {
                return Err(format!("{h} k={k}: weak edges differ from images of full edges"));
            }

            let circ = build_circ_graph(engine, &h, k).map_err(|e| e.to_string())?;
            let pure_outside = |v: &Vertex| {
                let Vertex::Class(c) = v else { return false };
                c.columns
                    .iter()
                    .take(k)
                    .enumerate()
                    .all(|(p, col)| col.iter().enumerate().all(|(q, &x)| p + q == r || x == 0))
            };
            let kept: Vec<&Vertex> = weak.vertices.iter().filter(|v| pure_outside(v)).collect();
            if circ.vertices.iter().collect::<Vec<_>>() != kept {
                return Err(format!("{h} k={k}: circ vertices are not the pure classes"));
            }
            let induced: BTreeSet<(Vertex, Vertex)> =
                weak_edges.into_iter().filter(|(a, b)| pure_outside(a) && pure_outside(b)).collect();
            let circ_edges: BTreeSet<(Vertex, Vertex)> =
                circ.edges.iter().map(|&(i, j)| (circ.vertices[i].clone(), circ.vertices[j].clone())).collect();
            if induced != circ_edges {
                return Err(format!("{h} k={k}: circ edges are not induced"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

/// Graph JSON and enumeration order are identical across runs and thread counts.
pub fn determinism(max_r: usize, max: u64) -> Check {
    let pools: Vec<rayon::ThreadPool> =
        [1, 4].iter().map(|&n| rayon::ThreadPoolBuilder::new().num_threads(n).build().unwrap()).collect();
    let mut cases = 0;
    for h in hodge_vectors_up_to(max_r, max) {
        let mut exports = BTreeSet::new();
        let mut orders = BTreeSet::new();
        for pool in &pools {
            for _ in 0..2 {
                let (json, order) = pool.install(|| {
                    let engine = RelationEngine::default();
                    let g = build_graph(&engine, &h).unwrap();
                    let order: Vec<Vec<u64>> = enumerate_admissible(&h, 1_000_000).unwrap().iter().map(grid).collect();
                    (serde_json::to_string(&g.to_json()).unwrap(), order)
                });
                exports.insert(json);
                orders.insert(order);
            }
        }
        if exports.len() != 1 || orders.len() != 1 {
            return Err(format!("{h}: output differs across runs or thread counts"));
        }
        cases += 1;
    }
    Ok(cases)
}

fn weight2_params(h0: u64, h1: u64) -> (HodgeVector, Vec<(Weight2Params, HodgeDiamond)>) {
    let h = HodgeVector::new(vec![h0, h1, h0]).unwrap();
    let ds = enumerate_admissible(&h, 1_000_000).unwrap();
    let params = ds.into_iter().map(|d| (Weight2Params::from_diamond(&d).unwrap(), d)).collect();
    (h, params)
}

/// `weight2_relation` against the engine; returns the number of pairs compared.
pub fn weight2_equivalence(engine: &RelationEngine, max_h0: u64, max_h1: u64) -> Check {
    let mut cases = 0;
    for h0 in 0..=max_h0 {
        for h1 in 0..=max_h1 {
            let (h, params) = weight2_params(h0, h1);
            for (p1, d1) in &params {
                for (p0, d0) in &params {
                    let closed = weight2_relation(&h, *p1, *p0).map_err(|e| e.to_string())?;
                    if closed != engine.relates(d1, d0).map_err(|e| e.to_string())? {
                        return Err(format!("{h}: {p1:?} -> {p0:?} closed form {closed}"));
                    }
                    cases += 1;
                }
            }
        }
    }
    Ok(cases)
}

/// `weight2_poset_class` against `analyze(build_graph(h))`.
pub fn weight2_classification(engine: &RelationEngine, max_h0: u64, max_h1: u64) -> Check {
    let mut cases = 0;
    for h0 in 0..=max_h0 {
        for h1 in 0..=max_h1 {
            let h = HodgeVector::new(vec![h0, h1, h0]).unwrap();
            let a = analyze(&build_graph(engine, &h).map_err(|e| e.to_string())?);
            let observed = match (a.poset, a.linear) {
                (true, true) => PosetClass::Linear,
                (true, false) => PosetClass::PosetNotLinear,
                (false, _) => PosetClass::NotPoset,
            };
            let predicted = weight2_poset_class(&h).map_err(|e| e.to_string())?;
            if observed != predicted {
                return Err(format!("{h}: graph is {observed:?}, classification says {predicted:?}"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}

pub const FAMILIES: [Family; 2] = [Family::Hypersurface, Family::DoubleCover];

/// Coefficient extraction against the closed forms, and the bounds report.
pub fn geometry_grid(max_n: u32, max_d: u32) -> Check {
    let mut cases = 0;
    for family in FAMILIES {
        for n in 1..=max_n {
            for d in n + 1..=max_d {
                let spec = FamilySpec::new(family, n, d).map_err(|e| e.to_string())?;
                let h = hodge_vector(&spec).map_err(|e| e.to_string())?;
                let (h0, h1) = closed_form_h0_h1(&spec).map_err(|e| e.to_string())?;
                if h.get(0) != h0 || (h.weight() >= 1 && h.get(1) as i64 != h1) {
                    return Err(format!("{family} n={n} d={d}: {h} vs closed form ({h0}, {h1})"));
                }
                let report = check_bounds(&spec).map_err(|e| e.to_string())?;
                if !report.all_true() {
                    return Err(format!("{family} n={n} d={d}: bounds report {report:?}"));
                }
                cases += 1;
            }
        }
    }
    Ok(cases)
}

pub fn f_n_nonnegative(min_n: u32, max_n: u32, max_d: u64) -> Check {
    let mut cases = 0;
    for n in min_n..=max_n {
        for d in n as u64 + 1..=max_d {
            let value: BigRational = f_n_int(n, d).map_err(|e| e.to_string())?;
            if value < BigRational::zero() {
                return Err(format!("f_{n}({d}) = {value} < 0"));
            }
            cases += 1;
        }
    }
    Ok(cases)
}
