//! Exhaustive enumeration oracles.
//!
//! Every exact identity in the crate is ultimately validated against these
//! streams, so they stay deliberately simple: graphs are edge-subset
//! combinations, multigraphs are all placements of 2m labeled half-edges
//! onto n vertices (edge e reads off half-edges 2e-1 and 2e).

use super::{LabeledGraph, LabeledMultigraph};
use crate::error::{Error, Result};

/// Size limits for the exhaustive streams. The defaults keep every sweep
/// in the advertised runtime; callers may raise them explicitly.
#[derive(Clone, Copy, Debug)]
pub struct OracleBounds {
    pub max_graph_n: u32,
    pub max_mg_n: u32,
    pub max_mg_m: u32,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds {
            max_graph_n: 7,
            max_mg_n: 4,
            max_mg_m: 4,
        }
    }
}

impl OracleBounds {
    pub fn raised(max_graph_n: u32, max_mg_n: u32, max_mg_m: u32) -> Self {
        OracleBounds {
            max_graph_n,
            max_mg_n,
            max_mg_m,
        }
    }
}

/// Stream of every (n,m)-graph, each exactly once, in lexicographic order
/// of the chosen edge index set. Total count C(C(n,2), m).
pub fn enumerate_graphs(n: u32, m: u64, bounds: &OracleBounds) -> Result<GraphEnumerator> {
    if n > bounds.max_graph_n {
        return Err(Error::BoundsExceeded {
            what: "graph enumeration vertex count",
            got: n as u64,
            limit: bounds.max_graph_n as u64,
        });
    }
    let pairs = all_pairs(n);
    if m > pairs.len() as u64 {
        return Err(Error::Infeasible(format!(
            "m = {m} exceeds C({n},2) = {}",
            pairs.len()
        )));
    }
    Ok(GraphEnumerator {
        n,
        pairs,
        indices: (0..m as usize).collect(),
        done: false,
        first: true,
    })
}

pub struct GraphEnumerator {
    n: u32,
    pairs: Vec<(u32, u32)>,
    indices: Vec<usize>,
    done: bool,
    first: bool,
}

impl Iterator for GraphEnumerator {
    type Item = LabeledGraph;

    fn next(&mut self) -> Option<LabeledGraph> {
        if self.done {
            return None;
        }
        if self.first {
            self.first = false;
        } else if !advance_combination(&mut self.indices, self.pairs.len()) {
            self.done = true;
            return None;
        }
        let mut edges: Vec<(u32, u32)> = self.indices.iter().map(|&i| self.pairs[i]).collect();
        edges.sort_unstable();
        Some(LabeledGraph {
            n: self.n,
            edges,
        })
    }
}

/// Pairs (u,v), u < v, ordered so that index = C(v-1,2) + (u-1).
pub(crate) fn all_pairs(n: u32) -> Vec<(u32, u32)> {
    let mut pairs = Vec::with_capacity((n as usize * (n as usize - 1)) / 2);
    for v in 2..=n {
        for u in 1..v {
            pairs.push((u, v));
        }
    }
    pairs
}

fn advance_combination(indices: &mut [usize], total: usize) -> bool {
    let k = indices.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if indices[i] < total - (k - i) {
            indices[i] += 1;
            for j in i + 1..k {
                indices[j] = indices[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Stream of every (n,m)-multigraph, optionally filtered so that every
/// vertex degree lies in `degree_filter`. Unfiltered, the stream has
/// exactly n^(2m) members (one per placement of the 2m half-edges).
pub fn enumerate_multigraphs(
    n: u32,
    m: u64,
    degree_filter: Option<&[u32]>,
    bounds: &OracleBounds,
) -> Result<MultigraphEnumerator> {
    if n > bounds.max_mg_n {
        return Err(Error::BoundsExceeded {
            what: "multigraph enumeration vertex count",
            got: n as u64,
            limit: bounds.max_mg_n as u64,
        });
    }
    if m > bounds.max_mg_m as u64 {
        return Err(Error::BoundsExceeded {
            what: "multigraph enumeration edge count",
            got: m,
            limit: bounds.max_mg_m as u64,
        });
    }
    let mut filter = degree_filter.map(|d| d.to_vec());
    if let Some(f) = &mut filter {
        f.sort_unstable();
        f.dedup();
    }
    Ok(MultigraphEnumerator {
        n,
        m,
        placement: vec![0u32; 2 * m as usize],
        filter,
        done: n == 0 && m > 0,
        first: true,
    })
}

pub struct MultigraphEnumerator {
    n: u32,
    m: u64,
    /// placement[h] = vertex (0-based) holding half-edge h+1
    placement: Vec<u32>,
    filter: Option<Vec<u32>>,
    done: bool,
    first: bool,
}

impl Iterator for MultigraphEnumerator {
    type Item = LabeledMultigraph;

    fn next(&mut self) -> Option<LabeledMultigraph> {
        loop {
            if self.done {
                return None;
            }
            if self.first {
                self.first = false;
                if self.n == 0 && self.m == 0 {
                    self.done = true;
                    return Some(LabeledMultigraph { n: 0, edges: Vec::new() });
                }
            } else if !self.advance() {
                self.done = true;
                return None;
            }
            if let Some(filter) = &self.filter {
                let mut deg = vec![0u32; self.n as usize];
                for &v in &self.placement {
                    deg[v as usize] += 1;
                }
                if !deg.iter().all(|d| filter.binary_search(d).is_ok()) {
                    continue;
                }
            }
            let edges: Vec<(u32, u32)> = (0..self.m as usize)
                .map(|e| (self.placement[2 * e] + 1, self.placement[2 * e + 1] + 1))
                .collect();
            return Some(LabeledMultigraph { n: self.n, edges });
        }
    }
}

impl MultigraphEnumerator {
    fn advance(&mut self) -> bool {
        for slot in self.placement.iter_mut().rev() {
            if *slot + 1 < self.n {
                *slot += 1;
                return true;
            }
            *slot = 0;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::binomial;
    use num::ToPrimitive;

    #[test]
    fn graph_stream_counts() {
        let bounds = OracleBounds::default();
        assert_eq!(enumerate_graphs(3, 3, &bounds).unwrap().count(), 1);
        assert_eq!(enumerate_graphs(4, 3, &bounds).unwrap().count(), 20);
        assert_eq!(enumerate_graphs(5, 4, &bounds).unwrap().count(), 210);
        assert_eq!(enumerate_graphs(4, 0, &bounds).unwrap().count(), 1);
        for (n, m) in [(5u32, 3u64), (6, 7), (6, 15)] {
            let total = enumerate_graphs(n, m, &bounds).unwrap().count() as u64;
            let pairs = (n as u64) * (n as u64 - 1) / 2;
            assert_eq!(total, binomial(pairs, m).to_u64().unwrap());
        }
    }

    #[test]
    fn graph_stream_is_duplicate_free() {
        let bounds = OracleBounds::default();
        let graphs: Vec<_> = enumerate_graphs(5, 4, &bounds).unwrap().collect();
        let set: std::collections::HashSet<_> = graphs.iter().cloned().collect();
        assert_eq!(set.len(), graphs.len());
        for g in &graphs {
            assert_eq!(g.n(), 5);
            assert_eq!(g.m(), 4);
        }
    }

    #[test]
    fn bounds_enforced() {
        let bounds = OracleBounds::default();
        assert!(matches!(
            enumerate_graphs(8, 1, &bounds),
            Err(crate::error::Error::BoundsExceeded { .. })
        ));
        assert!(matches!(
            enumerate_multigraphs(5, 1, None, &bounds),
            Err(crate::error::Error::BoundsExceeded { .. })
        ));
        let raised = OracleBounds::raised(8, 5, 5);
        assert!(enumerate_graphs(8, 1, &raised).is_ok());
    }

    #[test]
    fn multigraph_stream_counts() {
        let bounds = OracleBounds::default();
        // unconstrained: n^(2m)
        assert_eq!(enumerate_multigraphs(2, 2, None, &bounds).unwrap().count(), 16);
        assert_eq!(enumerate_multigraphs(3, 2, None, &bounds).unwrap().count(), 81);
        // degree-constrained spot values
        assert_eq!(
            enumerate_multigraphs(2, 1, Some(&[1]), &bounds).unwrap().count(),
            2
        );
        assert_eq!(
            enumerate_multigraphs(1, 1, Some(&[2]), &bounds).unwrap().count(),
            1
        );
        let mg33: Vec<_> = enumerate_multigraphs(3, 3, Some(&[2]), &bounds)
            .unwrap()
            .collect();
        assert_eq!(mg33.len(), 90);
        for g in &mg33 {
            assert!(g.degrees().iter().all(|&d| d == 2));
        }
    }
}
