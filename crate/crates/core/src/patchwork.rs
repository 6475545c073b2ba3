//! Patchworks: sets of distinct F-copies whose union of vertices and edges
//! forms a graph. The table of counts indexed by (n, m, t) is the kernel of
//! the exact subgraph-distribution formula.
//!
//! Tables are built by exhausting all (n,m)-graphs, listing F-copies per
//! graph, and counting copy subsets that cover every vertex and edge of the
//! graph. Once a partial subset already covers everything, the remaining
//! copies extend it freely, so the tail collapses to binomial counts.

use crate::error::{Error, Result};
use crate::graph::{
    canonical_edge_list, enumerate_graphs, for_each_copy, LabeledGraph, OracleBounds,
    patterns::PatternShape,
};
use crate::numbers;
use crate::par::{run_chunks, ExecMode};
use crate::series::{TruncSeries, Var};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::One;
use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};

const MAX_TABLE_N: u32 = 7;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchworkTable {
    pattern_key: String,
    n_max: u32,
    m_max: u32,
    /// Largest t with a nonzero entry.
    t_max: u32,
    entries: BTreeMap<(u32, u32, u32), u64>,
}

impl PatchworkTable {
    pub fn pattern_key(&self) -> &str {
        &self.pattern_key
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn m_max(&self) -> u32 {
        self.m_max
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    /// Patch_{F,n,m,t}; zero outside the stored support.
    pub fn count(&self, n: u32, m: u32, t: u32) -> u64 {
        if n == 0 && m == 0 && t == 0 {
            return 1;
        }
        self.entries.get(&(n, m, t)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u32, u32, u32), &u64)> {
        self.entries.iter()
    }
}

/// Count every F-patchwork with at most n_max vertices and m_max edges,
/// exhaustively over all t (a cap on t would corrupt the inclusion-
/// exclusion downstream, so none is offered).
pub fn build_table(
    pattern: &LabeledGraph,
    n_max: u32,
    m_max: u32,
    mode: ExecMode,
) -> Result<PatchworkTable> {
    if n_max > MAX_TABLE_N {
        return Err(Error::BoundsExceeded {
            what: "patchwork table vertex bound",
            got: n_max as u64,
            limit: MAX_TABLE_N as u64,
        });
    }
    let bounds = OracleBounds::raised(MAX_TABLE_N, 0, 0);
    let mut entries: BTreeMap<(u32, u32, u32), u64> = BTreeMap::new();
    entries.insert((0, 0, 0), 1);

    for n in 1..=n_max {
        let pair_count = n * (n - 1) / 2;
        for m in 0..=m_max.min(pair_count) {
            let graphs: Vec<LabeledGraph> =
                enumerate_graphs(n, m as u64, &bounds)?.collect();
            let merged = run_chunks(
                &graphs,
                256,
                mode,
                |chunk| {
                    let mut tally: BTreeMap<u32, u64> = BTreeMap::new();
                    for g in chunk {
                        tally_coverings(g, pattern, &mut tally);
                    }
                    tally
                },
                merge_tallies,
            );
            if let Some(tally) = merged {
                for (t, count) in tally {
                    if count > 0 {
                        *entries.entry((n, m, t)).or_insert(0) += count;
                    }
                }
            }
        }
    }
    let t_max = entries.keys().map(|&(_, _, t)| t).max().unwrap_or(0);
    Ok(PatchworkTable {
        pattern_key: canonical_edge_list(pattern),
        n_max,
        m_max,
        t_max,
        entries,
    })
}

fn merge_tallies(mut a: BTreeMap<u32, u64>, b: BTreeMap<u32, u64>) -> BTreeMap<u32, u64> {
    for (t, c) in b {
        *a.entry(t).or_insert(0) += c;
    }
    a
}

/// Count, for each t, the t-subsets of F-copies in `g` whose union covers
/// every vertex and every edge of `g`.
fn tally_coverings(g: &LabeledGraph, pattern: &LabeledGraph, tally: &mut BTreeMap<u32, u64>) {
    let mut copies: Vec<(u32, u64)> = Vec::new();
    for_each_copy(g, pattern, |vmask, emask| copies.push((vmask, emask)));

    let full_v: u32 = if g.n() == 32 { u32::MAX } else { (1u32 << g.n()) - 1 };
    let full_e: u64 = if g.m() == 64 {
        u64::MAX
    } else {
        (1u64 << g.m()) - 1
    };

    // suffix unions for pruning: what the copies from index i onward can still cover
    let len = copies.len();
    let mut suffix_v = vec![0u32; len + 1];
    let mut suffix_e = vec![0u64; len + 1];
    for i in (0..len).rev() {
        suffix_v[i] = suffix_v[i + 1] | copies[i].0;
        suffix_e[i] = suffix_e[i + 1] | copies[i].1;
    }

    fn rec(
        i: usize,
        chosen: u32,
        vcover: u32,
        ecover: u64,
        copies: &[(u32, u64)],
        suffix_v: &[u32],
        suffix_e: &[u64],
        full_v: u32,
        full_e: u64,
        tally: &mut BTreeMap<u32, u64>,
    ) {
        if vcover == full_v && ecover == full_e {
            // any subset of the remaining copies keeps the covering
            let rest = (copies.len() - i) as u64;
            for s in 0..=rest {
                let ways = numbers::binomial(rest, s);
                // patchwork counts stay far inside u64 at table scale
                let ways: u64 = ways.try_into().expect("tail binomial fits u64");
                *tally.entry(chosen + s as u32).or_insert(0) += ways;
            }
            return;
        }
        if i == copies.len() {
            return;
        }
        if (vcover | suffix_v[i]) != full_v || (ecover | suffix_e[i]) != full_e {
            return; // cannot complete the cover
        }
        let (vm, em) = copies[i];
        rec(
            i + 1,
            chosen + 1,
            vcover | vm,
            ecover | em,
            copies,
            suffix_v,
            suffix_e,
            full_v,
            full_e,
            tally,
        );
        rec(
            i + 1, chosen, vcover, ecover, copies, suffix_v, suffix_e, full_v, full_e, tally,
        );
    }
    rec(
        0, 0, 0, 0, &copies, &suffix_v, &suffix_e, full_v, full_e, tally,
    );
}

/// The generating series of the table: sum of count u^t w^m z^n / n!.
pub fn patchwork_gf(table: &PatchworkTable) -> TruncSeries {
    let mut s = TruncSeries::zero()
        .with_trunc(Var::Z, table.n_max as u16)
        .with_trunc(Var::W, table.m_max as u16)
        .with_trunc(Var::U, table.t_max as u16);
    for (&(n, m, t), &count) in &table.entries {
        let coeff = BigRational::new(BigInt::from(count), numbers::factorial(n as u64));
        s = s.add(&TruncSeries::monomial(coeff, [n as u16, m as u16, t as u16, 0]));
    }
    s.with_trunc(Var::Z, table.n_max as u16)
        .with_trunc(Var::W, table.m_max as u16)
        .with_trunc(Var::U, table.t_max as u16)
}

/// The vertex-disjoint approximation exp(u F(z,w)) with
/// F(z,w) = w^l z^k / aut: exact wherever only disjoint unions fit.
pub fn disjoint_approx_gf(
    pattern: &LabeledGraph,
    n_trunc: u16,
    m_trunc: u16,
    t_trunc: u16,
) -> TruncSeries {
    let shape = PatternShape::of_graph(pattern);
    let mono = TruncSeries::monomial(
        BigRational::new(BigInt::one(), BigInt::from(shape.automorphisms)),
        [shape.vertices as u16, shape.edges as u16, 1, 0],
    )
    .with_trunc(Var::Z, n_trunc)
    .with_trunc(Var::W, m_trunc)
    .with_trunc(Var::U, t_trunc);
    mono.exp().expect("monomial has zero constant term")
}

/// On-disk cache. Header: `F=<canonical edge list> n_max m_max t_max`,
/// then one `n m t count` line per entry.
pub fn save_table(table: &PatchworkTable, path: &Path) -> Result<()> {
    let mut out = std::fs::File::create(path)?;
    writeln!(
        out,
        "F={} {} {} {}",
        table.pattern_key, table.n_max, table.m_max, table.t_max
    )?;
    for (&(n, m, t), &count) in &table.entries {
        writeln!(out, "{n} {m} {t} {count}")?;
    }
    Ok(())
}

pub fn load_table(path: &Path) -> Result<PatchworkTable> {
    let file = std::fs::File::open(path)?;
    let mut lines = std::io::BufReader::new(file).lines();
    let header = lines.next().ok_or(Error::Parse {
        line: 1,
        msg: "empty patchwork cache".into(),
    })??;
    let mut fields = header.split_whitespace();
    let key = fields
        .next()
        .and_then(|f| f.strip_prefix("F="))
        .ok_or(Error::Parse {
            line: 1,
            msg: "cache header must start with F=".into(),
        })?
        .to_string();
    let parse_u32 = |tok: Option<&str>, what: &str| -> Result<u32> {
        tok.ok_or(Error::Parse {
            line: 1,
            msg: format!("missing {what}"),
        })?
        .parse()
        .map_err(|_| Error::Parse {
            line: 1,
            msg: format!("invalid {what}"),
        })
    };
    let n_max = parse_u32(fields.next(), "n_max")?;
    let m_max = parse_u32(fields.next(), "m_max")?;
    let t_max = parse_u32(fields.next(), "t_max")?;
    let mut entries = BTreeMap::new();
    for (idx, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let nums: Vec<u64> = line
            .split_whitespace()
            .map(|t| {
                t.parse().map_err(|_| Error::Parse {
                    line: idx + 2,
                    msg: "invalid cache entry".into(),
                })
            })
            .collect::<Result<_>>()?;
        if nums.len() != 4 {
            return Err(Error::Parse {
                line: idx + 2,
                msg: "cache entries are `n m t count`".into(),
            });
        }
        entries.insert((nums[0] as u32, nums[1] as u32, nums[2] as u32), nums[3]);
    }
    Ok(PatchworkTable {
        pattern_key: key,
        n_max,
        m_max,
        t_max,
        entries,
    })
}

/// Build or reuse a cached table. The cache key is the canonical pattern
/// form plus the exact bounds.
pub fn build_table_cached(
    pattern: &LabeledGraph,
    n_max: u32,
    m_max: u32,
    mode: ExecMode,
    cache_dir: Option<&Path>,
) -> Result<PatchworkTable> {
    let key = canonical_edge_list(pattern);
    let path = cache_dir.map(|dir| cache_path(dir, &key, n_max, m_max));
    if let Some(p) = &path {
        if p.exists() {
            let table = load_table(p)?;
            if table.pattern_key == key && table.n_max == n_max && table.m_max == m_max {
                return Ok(table);
            }
        }
    }
    let table = build_table(pattern, n_max, m_max, mode)?;
    if let Some(p) = &path {
        if let Some(dir) = p.parent() {
            std::fs::create_dir_all(dir)?;
        }
        save_table(&table, p)?;
    }
    Ok(table)
}

fn cache_path(dir: &Path, key: &str, n_max: u32, m_max: u32) -> PathBuf {
    let sanitized: String = key
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("patch_{sanitized}_n{n_max}_m{m_max}.csv"))
}
