use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diamond::{reduce_mod_k, DiamondClass, HodgeDiamond, HodgeVector};
use crate::error::{Error, Result};
use crate::relations::engine::RelationEngine;

/// Which relation graph a [`RelationGraph`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphKind {
    /// `R(h)` over admissible diamonds.
    Full,
    /// `R_k(h)`, the quotient modulo `B_k`.
    Weak(usize),
    /// `R°_k(h)`, classes pure outside `B_{k-1}`.
    WeakCirc(usize),
}

impl GraphKind {
    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Full => "full",
            GraphKind::Weak(_) => "weak",
            GraphKind::WeakCirc(_) => "weak_circ",
        }
    }

    pub fn level(self) -> Option<usize> {
        match self {
            GraphKind::Full => None,
            GraphKind::Weak(k) | GraphKind::WeakCirc(k) => Some(k),
        }
    }
}

/// A graph vertex: a full diamond or a diamond class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Vertex {
    Diamond(HodgeDiamond),
    Class(DiamondClass),
}

impl Vertex {
    /// Column 0 of the vertex, `q ↦ ◇^{0,q}`.
    pub fn profile_values(&self) -> Vec<u64> {
        match self {
            Vertex::Diamond(d) => d.column(0).to_vec(),
            Vertex::Class(c) => c.profile_values().to_vec(),
        }
    }

    pub fn label(&self) -> String {
        let values: Vec<String> = self.profile_values().iter().map(u64::to_string).collect();
        format!("a=({})", values.join(","))
    }
}

/// A relation digraph. Edge `(i, j)` means `vertex_i ⪯ vertex_j`; self-loops are
/// implied and never stored. No transitive reduction is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationGraph {
    pub kind: GraphKind,
    pub h: HodgeVector,
    pub vertices: Vec<Vertex>,
    /// Sorted, duplicate-free.
    pub edges: Vec<(usize, usize)>,
}

impl RelationGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i, j)).is_ok()
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.vertices.iter().position(|x| x == v)
    }

    /// Row-major boolean adjacency matrix.
    pub fn adjacency(&self) -> Vec<bool> {
        let n = self.len();
        let mut m = vec![false; n * n];
        for &(i, j) in &self.edges {
            m[i * n + j] = true;
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json(value: serde_json::Value) -> Result<Self> {
        let json: GraphJson =
            serde_json::from_value(value).map_err(|e| Error::input(format!("malformed graph JSON: {e}")))?;
        json.try_into()
    }

    /// DOT text: one node per vertex labeled by its column profile, one edge per arrow.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}{}\" {{", self.kind.name(), self.h);
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{}\"];", v.label());
        }
        for (i, j) in &self.edges {
            let _ = writeln!(out, "  {i} -> {j};");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let level = self.kind.level().map(|k| format!(" k={k}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "{} graph for h={}{}: {} vertices, {} edges",
            self.kind.name(),
            self.h,
            level,
            self.len(),
            self.edges.len()
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let targets: Vec<String> = self.edges.iter().filter(|e| e.0 == i).map(|e| e.1.to_string()).collect();
            let _ = writeln!(out, "{i:>4} {:<20} -> [{}]", v.label(), targets.join(","));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    kind: String,
    k: Option<usize>,
    h: HodgeVector,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
}

impl From<&RelationGraph> for GraphJson {
    fn from(g: &RelationGraph) -> Self {
        GraphJson {
            kind: g.kind.name().to_string(),
            k: g.kind.level(),
            h: g.h.clone(),
            vertices: g.vertices.clone(),
            edges: g.edges.clone(),
        }
    }
}

impl TryFrom<GraphJson> for RelationGraph {
    type Error = Error;

    fn try_from(json: GraphJson) -> Result<Self> {
        let kind = match (json.kind.as_str(), json.k) {
            ("full", None) => GraphKind::Full,
            ("weak", Some(k)) => GraphKind::Weak(k),
            ("weak_circ", Some(k)) => GraphKind::WeakCirc(k),
            (kind, k) => return Err(Error::input(format!("unknown graph kind {kind:?} with k={k:?}"))),
        };
        let n = json.vertices.len();
        for v in &json.vertices {
            let h = match v {
                Vertex::Diamond(d) => d.hodge_vector(),
                Vertex::Class(c) => &c.h,
            };
            if *h != json.h {
                return Err(Error::input(format!("vertex hodge vector {h} differs from graph h={}", json.h)));
            }
        }
        let edges: BTreeSet<(usize, usize)> = json.edges.into_iter().collect();
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= n || j >= n || i == j) {
            return Err(Error::input(format!("invalid edge [{i},{j}] for {n} vertices")));
        }
        Ok(RelationGraph { kind, h: json.h, vertices: json.vertices, edges: edges.into_iter().collect() })
    }
}

/// `R(h)`: every admissible diamond, with an edge for every related ordered pair.
pub fn build_graph(engine: &RelationEngine, h: &HodgeVector) -> Result<RelationGraph> {
    let diamonds = engine.admissible(h)?;
    let n = diamonds.len();
    let rows: Vec<Vec<(usize, usize)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut out = Vec::new();
            for j in 0..n {
                if i != j && engine.relates(&diamonds[i], &diamonds[j])? {
                    out.push((i, j));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(RelationGraph {
        kind: GraphKind::Full,
        h: h.clone(),
        vertices: diamonds.iter().cloned().map(Vertex::Diamond).collect(),
        edges: rows.into_iter().flatten().collect(),
    })
}

/// `R_k(h)`: the quotient of `R(h)` by agreement outside `B_k`.
pub fn build_weak_graph(engine: &RelationEngine, h: &HodgeVector, k: usize) -> Result<RelationGraph> {
    let full = build_graph(engine, h)?;
    Ok(quotient(&full, k))
}

/// Quotients a full graph modulo `B_k`: an arrow between classes whenever some pair
/// of preimages carries one.
pub fn quotient(full: &RelationGraph, k: usize) -> RelationGraph {
    let classes: Vec<DiamondClass> = full
        .vertices
        .iter()
        .map(|v| match v {
            Vertex::Diamond(d) => reduce_mod_k(d, k),
            Vertex::Class(_) => panic!("quotient expects a full graph"),
        })
        .collect();
    let index: BTreeMap<&DiamondClass, usize> =
        classes.iter().collect::<BTreeSet<_>>().into_iter().enumerate().map(|(i, c)| (c, i)).collect();
    let edges: BTreeSet<(usize, usize)> =
        full.edges.iter().map(|&(i, j)| (index[&classes[i]], index[&classes[j]])).filter(|(i, j)| i != j).collect();
    RelationGraph {
        kind: GraphKind::Weak(k),
        h: full.h.clone(),
        vertices: index.keys().map(|&c| Vertex::Class(c.clone())).collect(),
        edges: edges.into_iter().collect(),
    }
}

/// `R°_k(h)`: the induced subgraph of `R_k(h)` on classes pure outside `B_{k-1}`.
pub fn build_circ_graph(engine: &RelationEngine, h: &HodgeVector, k: usize) -> Result<RelationGraph> {
    let weak = build_weak_graph(engine, h, k)?;
    Ok(circ_subgraph(&weak))
}

fn circ_subgraph(weak: &RelationGraph) -> RelationGraph {
    let GraphKind::Weak(k) = weak.kind else {
        panic!("circ_subgraph expects a weak graph");
    };
    let keep: Vec<Option<usize>> = {
        let mut next = 0;
        weak.vertices
            .iter()
            .map(|v| match v {
                Vertex::Class(c) if c.is_pure_outside_previous_box() => {
                    next += 1;
                    Some(next - 1)
                }
                _ => None,
            })
            .collect()
    };
    let vertices = weak.vertices.iter().zip(&keep).filter(|(_, kept)| kept.is_some()).map(|(v, _)| v.clone()).collect();
    let edges = weak.edges.iter().filter_map(|&(i, j)| Some((keep[i]?, keep[j]?))).collect();
    RelationGraph { kind: GraphKind::WeakCirc(k), h: weak.h.clone(), vertices, edges }
}

/// Order-theoretic properties of a relation graph.
///
/// Reflexivity holds by convention. Counterexamples are the first failures in
/// canonical (lexicographic index) order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Analysis {
    pub vertices: usize,
    pub edges: usize,
    pub reflexive: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
    pub poset: bool,
    pub linear: bool,
    pub counterexamples: Counterexamples,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Counterexamples {
    /// `(i, j, l)` with `i → j`, `j → l`, `i ≠ l` and no `i → l`.
    pub transitivity: Option<[usize; 3]>,
    /// `(i, j)` with `i < j` and arrows both ways.
    pub antisymmetry: Option<[usize; 2]>,
    /// `(i, j)` with `i < j` and no arrow either way.
    pub incomparable: Option<[usize; 2]>,
}

pub fn analyze(g: &RelationGraph) -> Analysis {
    let n = g.len();
    let adj = g.adjacency();
    let mut counterexamples = Counterexamples::default();

    'outer: for i in 0..n {
        for j in (0..n).filter(|&j| adj[i * n + j]) {
            for l in (0..n).filter(|&l| adj[j * n + l]) {
                if l != i && !adj[i * n + l] {
                    counterexamples.transitivity = Some([i, j, l]);
                    break 'outer;
                }
            }
        }
    }
    let pairs = || (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    counterexamples.antisymmetry = pairs().find(|&(i, j)| adj[i * n + j] && adj[j * n + i]).map(|(i, j)| [i, j]);
    counterexamples.incomparable = pairs().find(|&(i, j)| !adj[i * n + j] && !adj[j * n + i]).map(|(i, j)| [i, j]);

    let transitive = counterexamples.transitivity.is_none();
    let antisymmetric = counterexamples.antisymmetry.is_none();
    let poset = transitive && antisymmetric;
    Analysis {
        vertices: n,
        edges: g.edges.len(),
        reflexive: true,
        transitive,
        antisymmetric,
        poset,
        linear: poset && counterexamples.incomparable.is_none(),
        counterexamples,
    }
}
