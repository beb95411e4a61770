//! Graphs, bipartitions, and the boundary reduction.
//!
//! A [`Graph`] carries the interaction structure and the per-vertex coupling
//! strengths `B_i` (dimensionless energy units, `k_B = 1`). Entanglement
//! across a [`Bipartition`] only lives on the qubits touched by
//! boundary-crossing edges, so [`boundary_reduce`] shrinks a problem of any
//! size down to its boundary before anything dense is built.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Coupling strengths for the vertices of a graph.
#[derive(Debug, Clone, PartialEq)]
pub enum Couplings {
    /// The same strictly positive coupling on every vertex.
    Uniform(f64),
    /// One strictly positive coupling per vertex.
    PerVertex(Vec<f64>),
}

impl From<f64> for Couplings {
    fn from(b: f64) -> Self {
        Couplings::Uniform(b)
    }
}

impl From<Vec<f64>> for Couplings {
    fn from(bs: Vec<f64>) -> Self {
        Couplings::PerVertex(bs)
    }
}

impl Couplings {
    fn resolve(self, n: usize) -> Result<Vec<f64>> {
        let list = match self {
            Couplings::Uniform(b) => vec![b; n],
            Couplings::PerVertex(bs) => {
                if bs.len() != n {
                    return Err(Error::InvalidGraph(format!(
                        "{} couplings for {} vertices",
                        bs.len(),
                        n
                    )));
                }
                bs
            }
        };
        for &b in &list {
            if !(b > 0.0) || !b.is_finite() {
                return Err(Error::NonPositiveCoupling(b));
            }
        }
        Ok(list)
    }
}

/// Undirected simple graph with strictly positive per-vertex couplings.
///
/// Edges are stored canonically: each pair ordered `(lo, hi)`, the list
/// sorted and free of duplicates and self-loops.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    couplings: Vec<f64>,
}

/// On-disk JSON form: `{"n": .., "edges": [[i,j],..], "couplings": [..]}`.
/// `couplings` is optional and defaults to all `1.0`.
#[derive(Serialize, Deserialize)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    couplings: Option<Vec<f64>>,
}

impl Graph {
    /// Build a graph from raw edge pairs, validating all invariants.
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        couplings: impl Into<Couplings>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut canon = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            canon.push((a.min(b), a.max(b)));
        }
        canon.sort_unstable();
        if canon.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph("duplicate edge".into()));
        }
        let couplings = couplings.into().resolve(n)?;
        Ok(Graph { n, edges: canon, couplings })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn coupling(&self, v: usize) -> f64 {
        self.couplings[v]
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Maximum vertex degree; the Hamiltonian's interaction body count is
    /// this plus one.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Path graph `0 - 1 - ... - (n-1)`.
    pub fn linear_chain(n: usize, couplings: impl Into<Couplings>) -> Result<Self> {
        Graph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)), couplings)
    }

    /// Open-boundary square lattice; vertex `(i, j)` maps to index `i*cols + j`.
    pub fn square_lattice(rows: usize, cols: usize, couplings: impl Into<Couplings>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidGraph("lattice dimensions must be at least 1".into()));
        }
        let idx = |i: usize, j: usize| i * cols + j;
        let mut edges = Vec::new();
        for i in 0..rows {
            for j in 0..cols {
                if j + 1 < cols {
                    edges.push((idx(i, j), idx(i, j + 1)));
                }
                if i + 1 < rows {
                    edges.push((idx(i, j), idx(i + 1, j)));
                }
            }
        }
        Graph::new(rows * cols, edges, couplings)
    }

    /// Star with hub vertex `0` and `k` leaves.
    pub fn star(k: usize, couplings: impl Into<Couplings>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidGraph("star needs at least one leaf".into()));
        }
        Graph::new(k + 1, (1..=k).map(|j| (0, j)), couplings)
    }

    /// Parse the JSON schema; missing `couplings` default to all `1.0`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::GraphJson(e.to_string()))?;
        let couplings = match file.couplings {
            Some(c) => Couplings::PerVertex(c),
            None => Couplings::Uniform(1.0),
        };
        Graph::new(file.n, file.edges.into_iter().map(|[a, b]| (a, b)), couplings)
    }

    /// Canonical JSON serialization (couplings always explicit, edges sorted).
    pub fn to_json(&self) -> String {
        let file = GraphFile {
            n: self.n,
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            couplings: Some(self.couplings.clone()),
        };
        serde_json::to_string(&file).expect("graph serialization cannot fail")
    }

    /// Short stable identifier: SHA-256 of the canonical JSON, first 16 hex chars.
    pub fn hash_id(&self) -> String {
        let digest = Sha256::digest(self.to_json().as_bytes());
        let mut out = String::with_capacity(16);
        for byte in &digest[..8] {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

/// A proper, non-empty split of the vertex set into `side_a` and the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side_a: BTreeSet<usize>,
    n: usize,
}

impl Bipartition {
    pub fn new(side_a: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let side_a: BTreeSet<usize> = side_a.into_iter().collect();
        if side_a.is_empty() {
            return Err(Error::InvalidPartition("side A is empty".into()));
        }
        if let Some(&v) = side_a.iter().find(|&&v| v >= n) {
            return Err(Error::InvalidPartition(format!(
                "vertex {v} out of range for {n} vertices"
            )));
        }
        if side_a.len() == n {
            return Err(Error::InvalidPartition("side A must be a proper subset".into()));
        }
        Ok(Bipartition { side_a, n })
    }

    /// Vertices `{0, ..., i}` vs the rest; requires `i < n - 1`.
    pub fn contiguous_cut(n: usize, i: usize) -> Result<Self> {
        if n < 2 || i >= n - 1 {
            return Err(Error::InvalidPartition(format!(
                "cut position {i} out of range for {n} vertices"
            )));
        }
        Bipartition::new(0..=i, n)
    }

    /// Vertex `i` vs the rest.
    pub fn single_site(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::InvalidPartition(format!(
                "site {i} out of range for {n} vertices"
            )));
        }
        Bipartition::new([i], n)
    }

    /// Even-indexed vertices vs odd-indexed ones; requires `n >= 2`.
    pub fn even_odd(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPartition(
                "even-odd split needs at least two vertices".into(),
            ));
        }
        Bipartition::new((0..n).step_by(2), n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side_a(&self) -> &BTreeSet<usize> {
        &self.side_a
    }

    pub fn contains(&self, v: usize) -> bool {
        self.side_a.contains(&v)
    }

    /// `Some(i)` when side A is exactly `{0, ..., i}`.
    pub fn cut_position(&self) -> Option<usize> {
        let k = self.side_a.len();
        if self.side_a.iter().copied().eq(0..k) {
            Some(k - 1)
        } else {
            None
        }
    }

    /// Canonical text form: `cut:i`, `site:i`, `even-odd`, or `set:v,v,...`.
    pub fn descriptor(&self) -> String {
        if self.side_a.len() == 1 {
            return format!("site:{}", self.side_a.iter().next().unwrap());
        }
        if let Some(i) = self.cut_position() {
            return format!("cut:{i}");
        }
        if self.side_a.iter().copied().eq((0..self.n).step_by(2)) {
            return "even-odd".into();
        }
        let list: Vec<String> = self.side_a.iter().map(|v| v.to_string()).collect();
        format!("set:{}", list.join(","))
    }
}

/// Boundary problem equivalent to the original `(graph, partition)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedProblem {
    pub reduced_graph: Graph,
    pub reduced_partition: Bipartition,
    /// Original vertex index of each reduced vertex.
    pub index_map: Vec<usize>,
}

/// Outcome of [`boundary_reduce`].
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryReduction {
    /// No edge crosses the partition: the state is a product across it and
    /// every entanglement quantifier vanishes.
    Disconnected,
    Reduced(ReducedProblem),
}

/// Edges with one endpoint on each side of the partition.
pub fn crossing_edges(g: &Graph, p: &Bipartition) -> Result<Vec<(usize, usize)>> {
    if p.n() != g.n() {
        return Err(Error::InvalidPartition(format!(
            "partition over {} vertices applied to a graph with {}",
            p.n(),
            g.n()
        )));
    }
    Ok(g.edges()
        .iter()
        .copied()
        .filter(|&(a, b)| p.contains(a) != p.contains(b))
        .collect())
}

/// Drop everything that acts locally with respect to the partition.
///
/// The surviving problem keeps exactly the endpoints of boundary-crossing
/// edges and exactly those edges, with couplings inherited through
/// `index_map`. Vertices isolated by the reduction carry no boundary
/// entanglement and are dropped with their side of the partition intact.
pub fn boundary_reduce(g: &Graph, p: &Bipartition) -> Result<BoundaryReduction> {
    let crossing = crossing_edges(g, p)?;
    if crossing.is_empty() {
        return Ok(BoundaryReduction::Disconnected);
    }
    let mut verts: BTreeSet<usize> = BTreeSet::new();
    for &(a, b) in &crossing {
        verts.insert(a);
        verts.insert(b);
    }
    let index_map: Vec<usize> = verts.into_iter().collect();
    let back: std::collections::HashMap<usize, usize> =
        index_map.iter().enumerate().map(|(new, &old)| (old, new)).collect();

    let reduced_edges: Vec<(usize, usize)> =
        crossing.iter().map(|&(a, b)| (back[&a], back[&b])).collect();
    let reduced_couplings: Vec<f64> = index_map.iter().map(|&v| g.coupling(v)).collect();
    let reduced_graph = Graph::new(index_map.len(), reduced_edges, reduced_couplings)?;

    let side_a: Vec<usize> = index_map
        .iter()
        .enumerate()
        .filter(|&(_, &old)| p.contains(old))
        .map(|(new, _)| new)
        .collect();
    let reduced_partition = Bipartition::new(side_a, index_map.len())?;

    Ok(BoundaryReduction::Reduced(ReducedProblem {
        reduced_graph,
        reduced_partition,
        index_map,
    }))
}
