//! Labeled simple graphs and multigraphs, together with the isomorphism,
//! density and enumeration machinery the counting formulas are checked
//! against.
//!
//! Vertices are labeled 1..n. Simple graphs store unordered pairs u < v.
//! Multigraph edges are oriented and carry implicit labels 1..m given by
//! their position; edge e owns half-edges 2e-1 (at the source) and 2e
//! (at the target), so loops and parallel edges are allowed.

mod density;
mod enumerate;
mod iso;
pub mod patterns;

pub use density::{essential_density, is_strictly_balanced, DensityReport};
pub use enumerate::{
    enumerate_graphs, enumerate_multigraphs, GraphEnumerator, MultigraphEnumerator, OracleBounds,
};
pub use iso::{
    automorphism_count, automorphism_count_multigraph, canonical_edge_list, for_each_copy,
    subgraph_count, subgraph_count_multigraph,
};

use crate::error::{Error, Result};
use num::rational::Ratio;
use std::collections::BTreeMap;
use std::fmt;

/// Simple labeled graph on vertices 1..n, no loops, no parallel edges.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabeledGraph {
    n: u32,
    edges: Vec<(u32, u32)>, // sorted, u < v
}

impl LabeledGraph {
    pub fn new(n: u32, edges: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let mut norm: Vec<(u32, u32)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("loop {a}-{b} not allowed in a simple graph"),
                });
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if u < 1 || v > n {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("edge {u}-{v} outside vertex range 1..={n}"),
                });
            }
            norm.push((u, v));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Parse {
                line: 0,
                msg: "repeated edge in a simple graph".into(),
            });
        }
        Ok(Self { n, edges: norm })
    }

    pub fn empty(n: u32) -> Self {
        Self { n, edges: Vec::new() }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let key = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&key).is_ok()
    }

    /// Degree of each vertex, indexed by label-1.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.n as usize];
        for &(u, v) in &self.edges {
            d[u as usize - 1] += 1;
            d[v as usize - 1] += 1;
        }
        d
    }

    /// Neighbor lists (sorted), indexed by label-1.
    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n as usize];
        for &(u, v) in &self.edges {
            adj[u as usize - 1].push(v);
            adj[v as usize - 1].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Text format: first line `n m`, then one `u v` line per edge, u < v.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let mut it = header.split_whitespace();
        let n: u32 = parse_field(it.next(), ln + 1, "n")?;
        let m: usize = parse_field(it.next(), ln + 1, "m")?;
        let mut edges = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("expected {m} edge lines"),
            })?;
            let mut it = line.split_whitespace();
            let u: u32 = parse_field(it.next(), ln + 1, "u")?;
            let v: u32 = parse_field(it.next(), ln + 1, "v")?;
            if u >= v {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("graph edges must satisfy u < v, got {u} {v}"),
                });
            }
            edges.push((u, v));
        }
        Self::new(n, edges)
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// Multigraph with labeled oriented edges; loops and parallel edges allowed.
/// Edge e (1-based position in `edges`) is the oriented pair (u, v).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledMultigraph {
    n: u32,
    edges: Vec<(u32, u32)>,
}

impl LabeledMultigraph {
    pub fn new(n: u32, edges: Vec<(u32, u32)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u < 1 || u > n || v < 1 || v > n {
                return Err(Error::Parse {
                    line: 0,
                    msg: format!("edge ({u},{v}) outside vertex range 1..={n}"),
                });
            }
        }
        Ok(Self { n, edges })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.edges.len() as u64
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Degree = number of half-edges at v; a loop contributes 2.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.n as usize];
        for &(u, v) in &self.edges {
            d[u as usize - 1] += 1;
            d[v as usize - 1] += 1;
        }
        d
    }

    /// Multiplicity of each unordered non-loop pair, plus loop count per vertex.
    pub fn pair_multiplicities(&self) -> (BTreeMap<(u32, u32), u32>, Vec<u32>) {
        let mut pairs = BTreeMap::new();
        let mut loops = vec![0u32; self.n as usize];
        for &(u, v) in &self.edges {
            if u == v {
                loops[u as usize - 1] += 1;
            } else {
                let key = if u < v { (u, v) } else { (v, u) };
                *pairs.entry(key).or_insert(0) += 1;
            }
        }
        (pairs, loops)
    }

    pub fn loop_count(&self) -> u64 {
        self.edges.iter().filter(|&&(u, v)| u == v).count() as u64
    }

    pub fn is_simple(&self) -> bool {
        let (pairs, loops) = self.pair_multiplicities();
        loops.iter().all(|&c| c == 0) && pairs.values().all(|&c| c <= 1)
    }

    /// Text format: first line `n m`, then `u v e` with the edge label e.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            out.push_str(&format!("{u} {v} {}\n", i + 1));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let mut it = header.split_whitespace();
        let n: u32 = parse_field(it.next(), ln + 1, "n")?;
        let m: usize = parse_field(it.next(), ln + 1, "m")?;
        let mut slots: Vec<Option<(u32, u32)>> = vec![None; m];
        for _ in 0..m {
            let (ln, line) = lines.next().ok_or(Error::Parse {
                line: 0,
                msg: format!("expected {m} edge lines"),
            })?;
            let mut it = line.split_whitespace();
            let u: u32 = parse_field(it.next(), ln + 1, "u")?;
            let v: u32 = parse_field(it.next(), ln + 1, "v")?;
            let e: usize = parse_field(it.next(), ln + 1, "e")?;
            if e < 1 || e > m {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("edge label {e} outside 1..={m}"),
                });
            }
            if slots[e - 1].replace((u, v)).is_some() {
                return Err(Error::Parse {
                    line: ln + 1,
                    msg: format!("edge label {e} appears twice"),
                });
            }
        }
        let edges = slots.into_iter().map(|s| s.unwrap()).collect();
        Self::new(n, edges)
    }
}

impl fmt::Debug for LabeledMultigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multigraph(n={}, edges={:?})", self.n, self.edges)
    }
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, name: &str) -> Result<T> {
    tok.ok_or(Error::Parse {
        line,
        msg: format!("missing field {name}"),
    })?
    .parse()
    .map_err(|_| Error::Parse {
        line,
        msg: format!("invalid field {name}"),
    })
}

/// Uniform view of both graph kinds for the density sweep.
pub trait GraphLike {
    fn vertex_count(&self) -> u32;
    fn edge_count(&self) -> u64;
    /// Number of edges with all endpoints inside the vertex mask (bit i = label i+1).
    fn edges_within(&self, mask: u32) -> u64;
}

impl GraphLike for LabeledGraph {
    fn vertex_count(&self) -> u32 {
        self.n
    }
    fn edge_count(&self) -> u64 {
        self.m()
    }
    fn edges_within(&self, mask: u32) -> u64 {
        self.edges
            .iter()
            .filter(|&&(u, v)| mask & (1 << (u - 1)) != 0 && mask & (1 << (v - 1)) != 0)
            .count() as u64
    }
}

impl GraphLike for LabeledMultigraph {
    fn vertex_count(&self) -> u32 {
        self.n
    }
    fn edge_count(&self) -> u64 {
        self.m()
    }
    fn edges_within(&self, mask: u32) -> u64 {
        self.edges
            .iter()
            .filter(|&&(u, v)| mask & (1 << (u - 1)) != 0 && mask & (1 << (v - 1)) != 0)
            .count() as u64
    }
}

/// Density, essential density and symmetry summary of a pattern.
#[derive(Clone, Debug)]
pub struct GraphStats {
    pub density: Ratio<u64>,
    pub essential_density: Ratio<u64>,
    /// Vertex labels of the densest subset (ties: smallest set, then lexicographic).
    pub densest_witness: Vec<u32>,
    /// Edge count of the densest witness.
    pub densest_edges: u64,
    pub strictly_balanced: bool,
    pub automorphism_count: u64,
}

impl GraphStats {
    pub fn of_graph(g: &LabeledGraph) -> Self {
        let report = essential_density(g);
        GraphStats {
            density: Ratio::new(g.m().max(0), g.n() as u64),
            essential_density: report.density,
            densest_witness: report.witness.clone(),
            densest_edges: report.edges,
            strictly_balanced: is_strictly_balanced(g),
            automorphism_count: automorphism_count(g),
        }
    }

    pub fn of_multigraph(g: &LabeledMultigraph) -> Self {
        let report = essential_density(g);
        GraphStats {
            density: Ratio::new(g.m(), g.n() as u64),
            essential_density: report.density,
            densest_witness: report.witness.clone(),
            densest_edges: report.edges,
            strictly_balanced: is_strictly_balanced(g),
            automorphism_count: automorphism_count_multigraph(g),
        }
    }
}
