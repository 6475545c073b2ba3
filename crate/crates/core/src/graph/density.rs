//! Density statistics via exhaustive vertex-subset sweep.
//!
//! Patterns are small and fixed, so the 2^k sweep is exact and instant.
//! An exact max-flow formulation would replace this if large patterns ever
//! became a requirement.

use super::GraphLike;
use num::rational::Ratio;

const MAX_SWEEP_VERTICES: u32 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityReport {
    /// Maximum induced density over nonempty vertex subsets.
    pub density: Ratio<u64>,
    /// Witness subset attaining the maximum; ties broken toward the
    /// smallest subset, then the lexicographically smallest label set.
    pub witness: Vec<u32>,
    /// Induced edge count of the witness.
    pub edges: u64,
}

/// d*(G): the highest density among induced subgraphs, with its witness.
pub fn essential_density<G: GraphLike>(g: &G) -> DensityReport {
    let n = g.vertex_count();
    assert!(n >= 1, "essential density needs a nonempty graph");
    assert!(n <= MAX_SWEEP_VERTICES, "subset sweep limited to {MAX_SWEEP_VERTICES} vertices");
    let mut best: Option<(Ratio<u64>, Vec<u32>, u64)> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as u64;
        let edges = g.edges_within(mask);
        let d = Ratio::new(edges, size);
        let labels: Vec<u32> = (1..=n).filter(|v| mask & (1 << (v - 1)) != 0).collect();
        let better = match &best {
            None => true,
            Some((bd, bw, _)) => {
                d > *bd
                    || (d == *bd
                        && (labels.len() < bw.len() || (labels.len() == bw.len() && labels < *bw)))
            }
        };
        if better {
            best = Some((d, labels, edges));
        }
    }
    let (density, witness, edges) = best.unwrap();
    DensityReport { density, witness, edges }
}

/// True iff d(G) is strictly larger than d(H) for every strict subgraph H.
/// It suffices to sweep proper vertex subsets: dropping edges only lowers
/// density, so the densest strict subgraph is induced on a proper subset.
pub fn is_strictly_balanced<G: GraphLike>(g: &G) -> bool {
    let n = g.vertex_count();
    assert!(n >= 1 && n <= MAX_SWEEP_VERTICES);
    let full = Ratio::new(g.edge_count(), n as u64);
    let all = (1u32 << n) - 1;
    for mask in 1u32..all {
        let d = Ratio::new(g.edges_within(mask), mask.count_ones() as u64);
        if d >= full {
            return false;
        }
    }
    true
}
