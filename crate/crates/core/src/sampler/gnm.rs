//! Uniform (n,m)-graph sampling: a partial Fisher-Yates shuffle over the
//! C(n,2) pair indices, materializing only the m selected entries through a
//! sparse displacement map.

use crate::graph::LabeledGraph;
use rand::Rng;
use std::collections::HashMap;

/// Pair index -> (u, v) with u < v, matching index = C(v-1,2) + (u-1).
pub fn decode_pair(idx: u64) -> (u32, u32) {
    let mut t = ((1.0 + ((8 * idx + 1) as f64).sqrt()) / 2.0).floor() as u64;
    while t * (t - 1) / 2 > idx {
        t -= 1;
    }
    while (t + 1) * t / 2 <= idx {
        t += 1;
    }
    let u = idx - t * (t - 1) / 2 + 1;
    (u as u32, t as u32 + 1)
}

/// Draw a uniform (n,m)-graph.
pub fn sample_gnm(n: u32, m: u64, rng: &mut impl Rng) -> LabeledGraph {
    let total = n as u64 * (n as u64).saturating_sub(1) / 2;
    assert!(m <= total, "m = {m} exceeds C({n},2) = {total}");
    let mut displaced: HashMap<u64, u64> = HashMap::with_capacity(m as usize * 2);
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m as usize);
    for i in 0..m {
        let j = rng.gen_range(i..total);
        let chosen = displaced.get(&j).copied().unwrap_or(j);
        let here = displaced.get(&i).copied().unwrap_or(i);
        displaced.insert(j, here);
        edges.push(decode_pair(chosen));
    }
    edges.sort_unstable();
    LabeledGraph::new(n, edges).expect("distinct pair indices decode to a valid graph")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_codec_is_a_bijection() {
        let n = 40u32;
        let total = n as u64 * (n as u64 - 1) / 2;
        let mut seen = std::collections::HashSet::new();
        for idx in 0..total {
            let (u, v) = decode_pair(idx);
            assert!(1 <= u && u < v && v <= n, "idx {idx} gave ({u},{v})");
            assert!(seen.insert((u, v)));
        }
        assert_eq!(seen.len() as u64, total);
    }

    #[test]
    fn full_edge_budget_gives_complete_graph() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = sample_gnm(4, 6, &mut rng);
        assert_eq!(g.m(), 6);
        let h = sample_gnm(4, 0, &mut rng);
        assert_eq!(h.m(), 0);
    }

    #[test]
    fn sampled_graphs_are_well_formed() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let g = sample_gnm(12, 20, &mut rng);
            assert_eq!(g.m(), 20);
            let set: std::collections::HashSet<_> = g.edges().iter().collect();
            assert_eq!(set.len(), 20);
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..20 {
            assert_eq!(sample_gnm(30, 50, &mut a), sample_gnm(30, 50, &mut b));
        }
    }
}
