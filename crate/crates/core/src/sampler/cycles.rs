//! Dedicated short-cycle counters. Counting cycles is the per-sample inner
//! loop of the validation harness, so cycles get a direct sparse-
//! neighborhood walk instead of the generic pattern matcher: rooted paths
//! over vertices larger than the root, closing back to it. A reusable
//! workspace keeps the adjacency in flat buffers across samples.

/// Cycle census of a multigraph: loops (length 1), parallel pairs
/// (length 2, counted as unordered pairs of parallel edges), and simple
/// cycles of each length 3..=k_max with edge-multiplicity products.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CycleCounts {
    pub loops: u64,
    pub double_edges: u64,
    /// per_length[j] = number of j-cycles, indices 0..=k_max (0..3 unused).
    pub per_length: Vec<u64>,
}

impl CycleCounts {
    pub fn count(&self, j: u32) -> u64 {
        match j {
            1 => self.loops,
            2 => self.double_edges,
            _ => self.per_length.get(j as usize).copied().unwrap_or(0),
        }
    }

    pub fn is_simple(&self) -> bool {
        self.loops == 0 && self.double_edges == 0
    }
}

/// Flat scratch buffers for repeated censuses over same-sized samples.
#[derive(Default)]
pub struct CycleWorkspace {
    /// CSR over aggregated non-loop neighbors: (neighbor, multiplicity).
    start: Vec<u32>,
    len: Vec<u32>,
    nbr: Vec<(u32, u64)>,
    cursor: Vec<u32>,
    on_path: Vec<bool>,
    stack: Vec<(u32, u32, u64)>,
}

impl CycleWorkspace {
    pub fn new() -> Self {
        Self::default()
    }

    /// Census of the multigraph on vertices 1..=n given by `edges`.
    pub fn census(&mut self, n: u32, edges: &[(u32, u32)], k_max: u32) -> CycleCounts {
        let n = n as usize;
        self.start.clear();
        self.start.resize(n, 0);
        self.len.clear();
        self.len.resize(n, 0);
        self.cursor.clear();
        self.cursor.resize(n, 0);
        self.on_path.clear();
        self.on_path.resize(n, false);

        // non-loop degree per vertex, loops counted directly
        let mut loops = 0u64;
        for &(u, v) in edges {
            if u == v {
                loops += 1;
            } else {
                self.cursor[u as usize - 1] += 1;
                self.cursor[v as usize - 1] += 1;
            }
        }
        let mut acc = 0u32;
        for v in 0..n {
            self.start[v] = acc;
            acc += self.cursor[v];
            self.cursor[v] = self.start[v];
        }
        self.nbr.clear();
        self.nbr.resize(acc as usize, (0, 0));
        for &(u, v) in edges {
            if u == v {
                continue;
            }
            let (a, b) = (u as usize - 1, v as usize - 1);
            self.nbr[self.cursor[a] as usize] = (v - 1, 1);
            self.cursor[a] += 1;
            self.nbr[self.cursor[b] as usize] = (u - 1, 1);
            self.cursor[b] += 1;
        }

        // aggregate parallel edges per vertex; each parallel pair is seen
        // from both endpoints
        let mut double_sides = 0u64;
        for v in 0..n {
            let s = self.start[v] as usize;
            let e = self.cursor[v] as usize;
            let slice = &mut self.nbr[s..e];
            slice.sort_unstable_by_key(|&(w, _)| w);
            let mut write = 0usize;
            let mut read = 0usize;
            while read < slice.len() {
                let (w, _) = slice[read];
                let mut mult = 0u64;
                while read < slice.len() && slice[read].0 == w {
                    mult += 1;
                    read += 1;
                }
                double_sides += mult * (mult - 1) / 2;
                slice[write] = (w, mult);
                write += 1;
            }
            self.len[v] = write as u32;
        }

        let per_length = self.walk(n, k_max);
        CycleCounts {
            loops,
            double_edges: double_sides / 2,
            per_length,
        }
    }

    /// Rooted DFS over paths of distinct vertices all larger than the root;
    /// closing back to the root at depth d yields a d-cycle. Every cycle is
    /// seen twice (once per direction), so totals are halved.
    fn walk(&mut self, n: usize, k_max: u32) -> Vec<u64> {
        let mut counts = vec![0u64; k_max as usize + 1];
        if k_max < 3 {
            return counts;
        }
        for root in 0..n {
            if self.len[root] < 2 {
                continue;
            }
            self.on_path[root] = true;
            self.stack.clear();
            self.stack.push((root as u32, 0, 1));
            loop {
                let depth = self.stack.len(); // vertices on the path
                if depth == 0 {
                    break;
                }
                let (v, advanced, weight) = {
                    let top = self.stack.last_mut().expect("nonempty stack");
                    let v = top.0 as usize;
                    if top.1 < self.len[v] {
                        let i = top.1;
                        top.1 += 1;
                        (v, Some(i), top.2)
                    } else {
                        (v, None, top.2)
                    }
                };
                match advanced {
                    Some(i) => {
                        let (w, mult) = self.nbr[(self.start[v] + i) as usize];
                        let w = w as usize;
                        if w == root && depth >= 3 {
                            counts[depth] += weight * mult;
                        } else if w > root && !self.on_path[w] && depth < k_max as usize {
                            self.on_path[w] = true;
                            self.stack.push((w as u32, 0, weight * mult));
                        }
                    }
                    None => {
                        self.on_path[v] = false;
                        self.stack.pop();
                    }
                }
            }
        }
        for c in counts.iter_mut() {
            *c /= 2;
        }
        counts
    }
}

/// Count cycles of length up to k_max in a multigraph given by its edge
/// list over vertices 1..=n.
pub fn count_cycles_multigraph(n: u32, edges: &[(u32, u32)], k_max: u32) -> CycleCounts {
    CycleWorkspace::new().census(n, edges, k_max)
}

/// Cycle counts of a simple graph from its adjacency lists (0-based).
pub fn count_cycles_simple(adj: &[Vec<u32>], k_max: u32) -> Vec<u64> {
    let mut edges = Vec::new();
    for (v, list) in adj.iter().enumerate() {
        for &w in list {
            if (v as u32) < w {
                edges.push((v as u32 + 1, w + 1));
            }
        }
    }
    CycleWorkspace::new()
        .census(adj.len() as u32, &edges, k_max)
        .per_length
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::patterns::{pattern_graph, pattern_multigraph, PatternName};
    use crate::graph::{subgraph_count, subgraph_count_multigraph, LabeledGraph, LabeledMultigraph};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn adjacency(g: &LabeledGraph) -> Vec<Vec<u32>> {
        g.adjacency()
            .into_iter()
            .map(|l| l.into_iter().map(|v| v - 1).collect())
            .collect()
    }

    #[test]
    fn known_graphs() {
        let k4 = pattern_graph(PatternName::K4).unwrap();
        let counts = count_cycles_simple(&adjacency(&k4), 4);
        assert_eq!(counts[3], 4);
        assert_eq!(counts[4], 3);
        let c5 = pattern_graph(PatternName::Cycle(5)).unwrap();
        let counts = count_cycles_simple(&adjacency(&c5), 6);
        assert_eq!(&counts[3..=5], &[0, 0, 1]);
    }

    #[test]
    fn matches_generic_matcher_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..30 {
            let n = 8u32;
            let mut edges = Vec::new();
            for v in 2..=n {
                for u in 1..v {
                    if rng.gen_bool(0.35) {
                        edges.push((u, v));
                    }
                }
            }
            let g = LabeledGraph::new(n, edges).unwrap();
            let counts = count_cycles_simple(&adjacency(&g), 6);
            for j in [3u32, 4, 5, 6] {
                let pat = pattern_graph(PatternName::Cycle(j)).unwrap();
                assert_eq!(counts[j as usize], subgraph_count(&g, &pat), "j = {j}");
            }
        }
    }

    #[test]
    fn multigraph_census() {
        // loop at 1, parallel pair 1-2 (x3 edges), triangle over 2-3-4
        let g = LabeledMultigraph::new(
            4,
            vec![(1, 1), (1, 2), (2, 1), (1, 2), (2, 3), (3, 4), (4, 2)],
        )
        .unwrap();
        let counts = count_cycles_multigraph(g.n(), g.edges(), 4);
        assert_eq!(counts.loops, 1);
        assert_eq!(counts.double_edges, 3); // C(3,2) parallel pairs
        assert_eq!(counts.count(3), 1);
        assert!(!counts.is_simple());

        // doubled side multiplies the triangle count
        let g2 = LabeledMultigraph::new(3, vec![(1, 2), (2, 1), (2, 3), (3, 1)]).unwrap();
        let counts = count_cycles_multigraph(g2.n(), g2.edges(), 3);
        assert_eq!(counts.count(3), 2);
        assert_eq!(counts.double_edges, 1);
    }

    #[test]
    fn multigraph_counts_match_generic_matcher() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut ws = CycleWorkspace::new();
        for _ in 0..25 {
            let n = 5u32;
            let m = 7u64;
            let edges: Vec<(u32, u32)> = (0..m)
                .map(|_| (rng.gen_range(1..=n), rng.gen_range(1..=n)))
                .collect();
            let g = LabeledMultigraph::new(n, edges).unwrap();
            let counts = ws.census(g.n(), g.edges(), 5);
            for j in 1..=5u32 {
                let pat = pattern_multigraph(PatternName::Cycle(j)).unwrap();
                assert_eq!(
                    counts.count(j),
                    subgraph_count_multigraph(&g, &pat),
                    "j = {j} in {g:?}"
                );
            }
        }
    }

    #[test]
    fn workspace_reuse_is_clean() {
        let mut ws = CycleWorkspace::new();
        let big = LabeledMultigraph::new(6, vec![(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)])
            .unwrap();
        let first = ws.census(big.n(), big.edges(), 5);
        assert_eq!(first.count(3), 2);
        // smaller instance afterwards must not see stale state
        let small = LabeledMultigraph::new(2, vec![(1, 2), (2, 1)]).unwrap();
        let second = ws.census(small.n(), small.edges(), 5);
        assert_eq!(second.double_edges, 1);
        assert_eq!(second.count(3), 0);
        let again = ws.census(big.n(), big.edges(), 5);
        assert_eq!(again, first);
    }
}
