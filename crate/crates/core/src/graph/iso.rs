//! Automorphism groups and subgraph counting for small patterns.
//!
//! Patterns are tiny (k <= 8 vertices in every use here), so everything is
//! exhaustive backtracking over vertex injections with degree pruning.
//! Copies are counted as vertex/edge-set images: the number of injections
//! landing on a given copy equals the automorphism count, so dividing the
//! injection total by it yields the number of distinct copies.

use super::{LabeledGraph, LabeledMultigraph};

const MAX_PATTERN_VERTICES: u32 = 8;

/// |Aut(F)| for a simple graph: permutations of vertices preserving edges.
pub fn automorphism_count(f: &LabeledGraph) -> u64 {
    assert!(
        f.n() <= MAX_PATTERN_VERTICES,
        "automorphism search is exhaustive, pattern limited to {MAX_PATTERN_VERTICES} vertices"
    );
    if f.n() == 0 {
        return 1;
    }
    let n = f.n() as usize;
    let deg = f.degrees();
    let adj = adjacency_matrix(f);
    let mut image = vec![0u32; n]; // image[i] = target label of vertex i+1, 0 = unset
    let mut used = vec![false; n];
    let mut count = 0u64;
    fn rec(
        i: usize,
        n: usize,
        deg: &[u32],
        adj: &[Vec<bool>],
        image: &mut [u32],
        used: &mut [bool],
        count: &mut u64,
    ) {
        if i == n {
            *count += 1;
            return;
        }
        for cand in 0..n {
            if used[cand] || deg[cand] != deg[i] {
                continue;
            }
            let ok = (0..i).all(|j| adj[i][j] == adj[cand][image[j] as usize - 1]);
            if !ok {
                continue;
            }
            used[cand] = true;
            image[i] = cand as u32 + 1;
            rec(i + 1, n, deg, adj, image, used, count);
            used[cand] = false;
        }
    }
    rec(0, n, &deg, &adj, &mut image, &mut used, &mut count);
    count
}

/// |Aut(F)| for a multigraph: joint bijections of vertices and edges that
/// preserve incidence, where each edge may additionally reverse orientation.
/// For a vertex permutation preserving the multiplicity structure, the edge
/// bijections factor as a product of multiplicity factorials, with an extra
/// factor 2 per loop (both orientations of a loop coincide).
pub fn automorphism_count_multigraph(f: &LabeledMultigraph) -> u64 {
    assert!(f.n() <= MAX_PATTERN_VERTICES);
    if f.n() == 0 {
        return 1;
    }
    let n = f.n() as usize;
    let (pairs, loops) = f.pair_multiplicities();
    let mut mult = vec![vec![0u32; n]; n];
    for (&(u, v), &c) in &pairs {
        mult[u as usize - 1][v as usize - 1] = c;
        mult[v as usize - 1][u as usize - 1] = c;
    }
    let deg = f.degrees();

    // Completion factor, identical for every valid vertex permutation.
    let mut completion = 1u64;
    for &c in pairs.values() {
        completion *= fact_u64(c);
    }
    for &l in &loops {
        completion *= fact_u64(l) << l;
    }

    let mut image = vec![0usize; n];
    let mut used = vec![false; n];
    let mut perms = 0u64;
    fn rec(
        i: usize,
        n: usize,
        deg: &[u32],
        loops: &[u32],
        mult: &[Vec<u32>],
        image: &mut [usize],
        used: &mut [bool],
        perms: &mut u64,
    ) {
        if i == n {
            *perms += 1;
            return;
        }
        for cand in 0..n {
            if used[cand] || deg[cand] != deg[i] || loops[cand] != loops[i] {
                continue;
            }
            let ok = (0..i).all(|j| mult[i][j] == mult[cand][image[j]]);
            if !ok {
                continue;
            }
            used[cand] = true;
            image[i] = cand;
            rec(i + 1, n, deg, loops, mult, image, used, perms);
            used[cand] = false;
        }
    }
    rec(0, n, &deg, &loops, &mult, &mut image, &mut used, &mut perms);
    perms * completion
}

/// G[F]: the number of distinct subgraphs of G isomorphic to F.
pub fn subgraph_count(g: &LabeledGraph, f: &LabeledGraph) -> u64 {
    if f.n() == 0 {
        return 1;
    }
    if f.n() > g.n() || f.m() > g.m() {
        return 0;
    }
    let aut = automorphism_count(f);
    let injections = count_injections(g, f);
    debug_assert_eq!(injections % aut, 0);
    injections / aut
}

/// G[F] for multigraphs. An embedding maps vertices injectively, assigns
/// each F-edge a distinct G-edge with matching endpoints, and may flip the
/// orientation per edge; loops absorb both flips. Dividing embeddings by
/// the automorphism count gives the number of sub-multigraph copies.
pub fn subgraph_count_multigraph(g: &LabeledMultigraph, f: &LabeledMultigraph) -> u64 {
    if f.n() == 0 {
        return 1;
    }
    if f.n() > g.n() || f.m() > g.m() {
        return 0;
    }
    let aut = automorphism_count_multigraph(f);
    let embeddings = count_embeddings_multigraph(g, f);
    debug_assert_eq!(embeddings % aut, 0);
    embeddings / aut
}

/// Visit every copy of F inside G as (vertex mask, edge mask) over G's
/// labels and edge positions. Duplicate images are emitted once.
/// Requires g.n() <= 32 and g.m() <= 64; intended for the oracle regime.
pub fn for_each_copy(g: &LabeledGraph, f: &LabeledGraph, mut visit: impl FnMut(u32, u64)) {
    assert!(g.n() <= 32 && g.m() <= 64);
    if f.n() == 0 || f.n() > g.n() || f.m() > g.m() {
        return;
    }
    let mut seen = std::collections::HashSet::new();
    enumerate_injections(g, f, &mut |image: &[u32]| {
        let mut vmask = 0u32;
        for &t in image {
            vmask |= 1 << (t - 1);
        }
        let mut emask = 0u64;
        for &(a, b) in f.edges() {
            let (u, v) = (image[a as usize - 1], image[b as usize - 1]);
            let key = if u < v { (u, v) } else { (v, u) };
            let pos = g.edges().binary_search(&key).expect("edge present by construction");
            emask |= 1 << pos;
        }
        if seen.insert((vmask, emask)) {
            visit(vmask, emask);
        }
    });
}

fn count_injections(g: &LabeledGraph, f: &LabeledGraph) -> u64 {
    let mut count = 0u64;
    enumerate_injections(g, f, &mut |_| count += 1);
    count
}

/// Backtracking over injections of V(F) into V(G) such that every F-edge
/// maps onto a G-edge. F's vertices are visited in an order that keeps each
/// new vertex adjacent to the mapped prefix when possible.
fn enumerate_injections(g: &LabeledGraph, f: &LabeledGraph, visit: &mut dyn FnMut(&[u32])) {
    let fk = f.n() as usize;
    let order = matching_order(f);
    let fdeg = f.degrees();
    let gdeg = g.degrees();
    let gadj = adjacency_sets(g);
    let fadj = adjacency_matrix(f);

    // anchors[i]: indices j < i in `order` adjacent to order[i] within F
    let anchors: Vec<Vec<usize>> = (0..fk)
        .map(|i| {
            (0..i)
                .filter(|&j| fadj[order[i] as usize - 1][order[j] as usize - 1])
                .collect()
        })
        .collect();

    let mut image = vec![0u32; fk]; // image[i] = G-label for order[i]
    let mut used = vec![false; g.n() as usize];

    fn rec(
        i: usize,
        order: &[u32],
        anchors: &[Vec<usize>],
        fdeg: &[u32],
        gdeg: &[u32],
        gadj: &[Vec<u32>],
        gn: u32,
        image: &mut [u32],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[u32]),
    ) {
        if i == order.len() {
            // report in F-vertex order
            let mut by_vertex = vec![0u32; order.len()];
            for (pos, &fv) in order.iter().enumerate() {
                by_vertex[fv as usize - 1] = image[pos];
            }
            visit(&by_vertex);
            return;
        }
        let fv = order[i] as usize - 1;
        let candidates: Vec<u32> = if let Some(&a) = anchors[i].first() {
            gadj[image[a] as usize - 1].clone()
        } else {
            (1..=gn).collect()
        };
        for cand in candidates {
            let c = cand as usize - 1;
            if used[c] || gdeg[c] < fdeg[fv] {
                continue;
            }
            let ok = anchors[i]
                .iter()
                .all(|&a| gadj[image[a] as usize - 1].binary_search(&cand).is_ok());
            if !ok {
                continue;
            }
            used[c] = true;
            image[i] = cand;
            rec(i + 1, order, anchors, fdeg, gdeg, gadj, gn, image, used, visit);
            used[c] = false;
        }
    }
    rec(
        0, &order, &anchors, &fdeg, &gdeg, &gadj, g.n(), &mut image, &mut used, visit,
    );
}

fn count_embeddings_multigraph(g: &LabeledMultigraph, f: &LabeledMultigraph) -> u64 {
    let fk = f.n() as usize;
    let gn = g.n() as usize;
    let (f_pairs, f_loops) = f.pair_multiplicities();
    let (g_pairs, _) = g.pair_multiplicities();
    let g_loops = {
        let (_, l) = g.pair_multiplicities();
        l
    };
    let fdeg = f.degrees();
    let gdeg = g.degrees();

    let mut fmult = vec![vec![0u32; fk]; fk];
    for (&(u, v), &c) in &f_pairs {
        fmult[u as usize - 1][v as usize - 1] = c;
        fmult[v as usize - 1][u as usize - 1] = c;
    }
    let gmult = |a: usize, b: usize| -> u32 {
        let key = if a < b {
            (a as u32 + 1, b as u32 + 1)
        } else {
            (b as u32 + 1, a as u32 + 1)
        };
        g_pairs.get(&key).copied().unwrap_or(0)
    };

    let mut image = vec![0usize; fk];
    let mut used = vec![false; gn];
    let mut total = 0u64;

    // weight accumulated so far = product of falling factorials over pairs
    // and loops fixed by the mapped prefix
    fn rec(
        i: usize,
        fk: usize,
        gn: usize,
        fdeg: &[u32],
        gdeg: &[u32],
        f_loops: &[u32],
        g_loops: &[u32],
        fmult: &[Vec<u32>],
        gmult: &dyn Fn(usize, usize) -> u32,
        image: &mut [usize],
        used: &mut [bool],
        weight: u64,
        total: &mut u64,
    ) {
        if i == fk {
            *total += weight;
            return;
        }
        for cand in 0..gn {
            if used[cand] || gdeg[cand] < fdeg[i] {
                continue;
            }
            // loops at this vertex: injective assignment + 2 orientations each
            let lf = f_loops[i];
            let lg = g_loops[cand];
            if lf > lg {
                continue;
            }
            let mut w = weight * falling_u64(lg, lf) * (1u64 << lf);
            let mut ok = true;
            for j in 0..i {
                let need = fmult[i][j];
                if need == 0 {
                    continue;
                }
                let have = gmult(cand, image[j]);
                if have < need {
                    ok = false;
                    break;
                }
                w *= falling_u64(have, need);
            }
            if !ok || w == 0 {
                continue;
            }
            used[cand] = true;
            image[i] = cand;
            rec(
                i + 1, fk, gn, fdeg, gdeg, f_loops, g_loops, fmult, gmult, image, used, w, total,
            );
            used[cand] = false;
        }
    }
    rec(
        0, fk, gn, &fdeg, &gdeg, &f_loops, &g_loops, &fmult, &gmult, &mut image, &mut used, 1,
        &mut total,
    );
    total
}

/// Canonical edge list of a small pattern: the lexicographically smallest
/// relabeling, rendered as `u-v` pairs joined by commas. Used as a cache key.
pub fn canonical_edge_list(f: &LabeledGraph) -> String {
    assert!(f.n() <= MAX_PATTERN_VERTICES);
    let n = f.n() as usize;
    let mut labels: Vec<u32> = (1..=f.n()).collect();
    let mut best: Option<Vec<(u32, u32)>> = None;
    permute(&mut labels, 0, &mut |perm| {
        let mut relabeled: Vec<(u32, u32)> = f
            .edges()
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u as usize - 1], perm[v as usize - 1]);
                if a < b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        relabeled.sort_unstable();
        if best.as_ref().map_or(true, |b| relabeled < *b) {
            best = Some(relabeled);
        }
    });
    let edges = best.unwrap_or_default();
    let body = edges
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(",");
    format!("n{n}:{body}")
}

fn permute(labels: &mut [u32], i: usize, visit: &mut impl FnMut(&[u32])) {
    if i == labels.len() {
        visit(labels);
        return;
    }
    for j in i..labels.len() {
        labels.swap(i, j);
        permute(labels, i + 1, visit);
        labels.swap(i, j);
    }
}

/// Order F's vertices so each one (after the first of a component) touches
/// an earlier vertex; ties broken toward higher degree.
fn matching_order(f: &LabeledGraph) -> Vec<u32> {
    let n = f.n() as usize;
    let adj = adjacency_matrix(f);
    let deg = f.degrees();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let mut best: Option<(bool, u32, usize)> = None; // (adjacent to prefix, degree, index)
        for v in 0..n {
            if placed[v] {
                continue;
            }
            let attached = order.iter().any(|&o: &u32| adj[v][o as usize - 1]);
            let key = (attached, deg[v], v);
            match best {
                Some((ba, bd, bi)) => {
                    if (key.0, key.1) > (ba, bd) || ((key.0, key.1) == (ba, bd) && v < bi) {
                        best = Some(key);
                    }
                }
                None => best = Some(key),
            }
        }
        let (_, _, v) = best.unwrap();
        placed[v] = true;
        order.push(v as u32 + 1);
    }
    order
}

fn adjacency_matrix(g: &LabeledGraph) -> Vec<Vec<bool>> {
    let n = g.n() as usize;
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u as usize - 1][v as usize - 1] = true;
        adj[v as usize - 1][u as usize - 1] = true;
    }
    adj
}

fn adjacency_sets(g: &LabeledGraph) -> Vec<Vec<u32>> {
    g.adjacency()
}

fn fact_u64(n: u32) -> u64 {
    (1..=n as u64).product::<u64>().max(1)
}

fn falling_u64(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let mut acc = 1u64;
    for i in 0..k as u64 {
        acc *= n as u64 - i;
    }
    acc
}

/// Exhaustive reference count used to validate the backtracking counters:
/// iterate vertex subsets and edge subsets and test isomorphism directly.
#[cfg(test)]
pub fn subgraph_count_by_subsets(g: &LabeledGraph, f: &LabeledGraph) -> u64 {
    let n = g.n();
    let m = g.m() as u32;
    if f.n() > n || f.m() > g.m() {
        return 0;
    }
    let mut count = 0u64;
    for vmask in 0u32..(1 << n) {
        if vmask.count_ones() != f.n() {
            continue;
        }
        let verts: Vec<u32> = (1..=n).filter(|v| vmask & (1 << (v - 1)) != 0).collect();
        let within: Vec<usize> = (0..m as usize)
            .filter(|&i| {
                let (u, v) = g.edges()[i];
                vmask & (1 << (u - 1)) != 0 && vmask & (1 << (v - 1)) != 0
            })
            .collect();
        if (within.len() as u64) < f.m() {
            continue;
        }
        let k = within.len();
        for emask in 0u32..(1 << k) {
            if emask.count_ones() as u64 != f.m() {
                continue;
            }
            let sub_edges: Vec<(u32, u32)> = (0..k)
                .filter(|&i| emask & (1 << i) != 0)
                .map(|i| g.edges()[within[i]])
                .collect();
            if subsets_isomorphic(&verts, &sub_edges, f) {
                count += 1;
            }
        }
    }
    count
}

#[cfg(test)]
fn subsets_isomorphic(verts: &[u32], edges: &[(u32, u32)], f: &LabeledGraph) -> bool {
    use std::collections::HashSet;
    let k = verts.len();
    let mut perm: Vec<usize> = (0..k).collect();
    let fset: HashSet<(u32, u32)> = f.edges().iter().copied().collect();
    let mut found = false;
    fn rec(
        perm: &mut Vec<usize>,
        i: usize,
        verts: &[u32],
        edges: &[(u32, u32)],
        fset: &HashSet<(u32, u32)>,
        found: &mut bool,
    ) {
        if *found {
            return;
        }
        if i == perm.len() {
            // map verts[j] -> f-vertex perm[j]+1
            let pos = |x: u32| verts.iter().position(|&v| v == x).unwrap();
            let ok = edges.iter().all(|&(u, v)| {
                let (a, b) = (perm[pos(u)] as u32 + 1, perm[pos(v)] as u32 + 1);
                let key = if a < b { (a, b) } else { (b, a) };
                fset.contains(&key)
            });
            if ok {
                *found = true;
            }
            return;
        }
        for j in i..perm.len() {
            perm.swap(i, j);
            rec(perm, i + 1, verts, edges, fset, found);
            perm.swap(i, j);
        }
    }
    if edges.len() != fset.len() {
        return false;
    }
    rec(&mut perm, 0, verts, edges, &fset, &mut found);
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::patterns::{pattern_graph, PatternName};

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphism_count(&pattern_graph(PatternName::C3).unwrap()), 6);
        assert_eq!(automorphism_count(&pattern_graph(PatternName::Path3).unwrap()), 2);
        assert_eq!(automorphism_count(&pattern_graph(PatternName::Cycle(5)).unwrap()), 10);
        assert_eq!(automorphism_count(&pattern_graph(PatternName::C4).unwrap()), 8);
        assert_eq!(automorphism_count(&pattern_graph(PatternName::K4).unwrap()), 24);
        assert_eq!(automorphism_count(&pattern_graph(PatternName::K2).unwrap()), 2);
    }

    #[test]
    fn labeled_copy_identity() {
        // aut(F) * (distinct labeled copies of F on its own vertex set) = k!
        for name in [
            PatternName::K2,
            PatternName::Path3,
            PatternName::C3,
            PatternName::C4,
            PatternName::K4,
            PatternName::Cycle(5),
        ] {
            let f = pattern_graph(name).unwrap();
            let copies = subgraph_count_on_own_labels(&f);
            let aut = automorphism_count(&f);
            let kfact: u64 = (1..=f.n() as u64).product();
            assert_eq!(aut * copies, kfact, "{name:?}");
        }
    }

    fn subgraph_count_on_own_labels(f: &LabeledGraph) -> u64 {
        // number of distinct relabelings of F on its own labels
        let mut distinct = std::collections::HashSet::new();
        let mut labels: Vec<u32> = (1..=f.n()).collect();
        permute(&mut labels, 0, &mut |perm| {
            let mut edges: Vec<(u32, u32)> = f
                .edges()
                .iter()
                .map(|&(u, v)| {
                    let (a, b) = (perm[u as usize - 1], perm[v as usize - 1]);
                    if a < b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            edges.sort_unstable();
            distinct.insert(edges);
        });
        distinct.len() as u64
    }

    #[test]
    fn triangle_counts() {
        let k3 = pattern_graph(PatternName::C3).unwrap();
        let k4 = pattern_graph(PatternName::K4).unwrap();
        assert_eq!(subgraph_count(&k3, &k3), 1);
        assert_eq!(subgraph_count(&k4, &k3), 4);
        // K_{2,3} contains 3 four-cycles
        let k23 = LabeledGraph::new(5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]).unwrap();
        let c4 = pattern_graph(PatternName::C4).unwrap();
        assert_eq!(subgraph_count(&k23, &c4), 3);
    }

    #[test]
    fn backtracking_matches_subset_oracle() {
        let g = LabeledGraph::new(6, [(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 6), (2, 5)])
            .unwrap();
        for name in [
            PatternName::K2,
            PatternName::Path3,
            PatternName::C3,
            PatternName::C4,
            PatternName::K4,
        ] {
            let f = pattern_graph(name).unwrap();
            assert_eq!(
                subgraph_count(&g, &f),
                subgraph_count_by_subsets(&g, &f),
                "{name:?}"
            );
        }
        // disconnected pattern: two disjoint edges
        let two_edges = LabeledGraph::new(4, [(1, 2), (3, 4)]).unwrap();
        assert_eq!(
            subgraph_count(&g, &two_edges),
            subgraph_count_by_subsets(&g, &two_edges)
        );
    }

    #[test]
    fn multigraph_automorphisms() {
        use crate::graph::patterns::pattern_multigraph;
        // loop: identity and orientation flip
        let c1 = pattern_multigraph(PatternName::Cycle(1)).unwrap();
        assert_eq!(automorphism_count_multigraph(&c1), 2);
        // double edge: 2 (vertex swap) * 2 (edge swap)
        let c2 = pattern_multigraph(PatternName::Cycle(2)).unwrap();
        assert_eq!(automorphism_count_multigraph(&c2), 4);
        // oriented single edge: vertex swap + flip
        let e = LabeledMultigraph::new(2, vec![(1, 2)]).unwrap();
        assert_eq!(automorphism_count_multigraph(&e), 2);
        // triangle: dihedral group
        let c3 = pattern_multigraph(PatternName::C3).unwrap();
        assert_eq!(automorphism_count_multigraph(&c3), 6);
        let c5 = pattern_multigraph(PatternName::Cycle(5)).unwrap();
        assert_eq!(automorphism_count_multigraph(&c5), 10);
    }

    #[test]
    fn multigraph_subgraph_counts() {
        use crate::graph::patterns::pattern_multigraph;
        let loop_pat = pattern_multigraph(PatternName::Cycle(1)).unwrap();
        let edge_pat = LabeledMultigraph::new(2, vec![(1, 2)]).unwrap();
        let c2 = pattern_multigraph(PatternName::Cycle(2)).unwrap();

        let g = LabeledMultigraph::new(3, vec![(1, 1), (1, 2), (2, 1), (2, 3)]).unwrap();
        assert_eq!(subgraph_count_multigraph(&g, &loop_pat), 1);
        assert_eq!(subgraph_count_multigraph(&g, &edge_pat), 3); // non-loop edges
        assert_eq!(subgraph_count_multigraph(&g, &c2), 1); // the parallel pair 1-2

        // two parallel edges hold two single-edge copies
        let pp = LabeledMultigraph::new(2, vec![(1, 2), (2, 1)]).unwrap();
        assert_eq!(subgraph_count_multigraph(&pp, &edge_pat), 2);
        assert_eq!(subgraph_count_multigraph(&pp, &c2), 1);

        // triangle with one doubled side: 2 triangle copies
        let c3 = pattern_multigraph(PatternName::C3).unwrap();
        let g2 = LabeledMultigraph::new(3, vec![(1, 2), (2, 1), (2, 3), (3, 1)]).unwrap();
        assert_eq!(subgraph_count_multigraph(&g2, &c3), 2);
    }

    #[test]
    fn canonical_form_is_label_invariant() {
        let a = LabeledGraph::new(4, [(1, 2), (2, 3), (3, 4)]).unwrap();
        let b = LabeledGraph::new(4, [(2, 4), (1, 3), (1, 4)]).unwrap(); // relabeled path
        assert_eq!(canonical_edge_list(&a), canonical_edge_list(&b));
        let c = LabeledGraph::new(4, [(1, 2), (2, 3), (2, 4)]).unwrap(); // star, different shape
        assert_ne!(canonical_edge_list(&a), canonical_edge_list(&c));
    }
}
