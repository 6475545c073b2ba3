//! Monte Carlo validation harness: uniform samplers for both random-graph
//! models, joint subgraph-count histograms, and the distance diagnostics
//! that compare them to the predicted Poisson laws.
//!
//! Sampling is organized in fixed-size blocks. Block b draws from an
//! independent ChaCha8 stream derived from (seed, b), and block tallies
//! merge by addition, so results are bit-identical across thread counts
//! and across the sequential/parallel execution modes.

mod cycles;
mod dc;
mod gnm;
mod stats;

pub use cycles::{count_cycles_multigraph, count_cycles_simple, CycleCounts, CycleWorkspace};
pub use dc::DcSampler;
pub use gnm::{decode_pair, sample_gnm};
pub use stats::{chi_square_uniform, chi_square_with_probs, ChiSquare};

use crate::census::PoissonLaw;
use crate::degree::DegreeSet;
use crate::error::{Error, Result};
use crate::graph::{subgraph_count, subgraph_count_multigraph, LabeledGraph, LabeledMultigraph};
use crate::par::{run_blocks, ExecMode};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::io::Write;

pub const RNG_ALGORITHM: &str = "chacha8";

/// Derive the RNG for one block: one keyed generator per (seed, block).
pub fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

#[derive(Clone, Debug)]
pub enum Model {
    Gnm {
        n: u32,
        m: u64,
    },
    DegreeConstrained {
        degrees: DegreeSet,
        n: u32,
        m: u64,
        /// Keep only samples without loops or parallel edges (the simple-
        /// graph laws condition on this event).
        condition_simple: bool,
    },
}

impl Model {
    fn label(&self) -> &'static str {
        match self {
            Model::Gnm { .. } => "gnm",
            Model::DegreeConstrained { .. } => "dc",
        }
    }
}

/// What to count on each sample.
#[derive(Clone, Debug)]
pub enum CountTarget {
    /// Cycle of the given length (1 = loop, 2 = parallel pair).
    Cycle(u32),
    /// Arbitrary simple-graph pattern, counted by the generic matcher.
    Graph(LabeledGraph),
    /// Arbitrary multigraph pattern.
    Multigraph(LabeledMultigraph),
}

impl CountTarget {
    pub fn label(&self) -> String {
        match self {
            CountTarget::Cycle(j) => format!("cycle:{j}"),
            CountTarget::Graph(g) => format!("graph[k={},l={}]", g.n(), g.m()),
            CountTarget::Multigraph(g) => format!("multigraph[k={},l={}]", g.n(), g.m()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatchConfig {
    pub num_samples: u64,
    pub seed: u64,
    pub block_size: u64,
    pub mode: ExecMode,
    /// Stall guard: degree-sequence attempts allowed per multigraph draw.
    pub max_seq_attempts: u64,
}

impl BatchConfig {
    pub fn new(num_samples: u64, seed: u64) -> Self {
        BatchConfig {
            num_samples,
            seed,
            block_size: 64,
            mode: ExecMode::default(),
            max_seq_attempts: 10_000_000,
        }
    }

    pub fn with_mode(mut self, mode: ExecMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_block_size(mut self, block_size: u64) -> Self {
        self.block_size = block_size.max(1);
        self
    }
}

/// Joint histogram of subgraph counts over a sample batch, plus the
/// bookkeeping needed to reproduce and diagnose it.
#[derive(Clone, Debug)]
pub struct SampleBatch {
    pub model: String,
    pub n: u32,
    pub m: u64,
    pub degrees: Option<Vec<u32>>,
    pub condition_simple: bool,
    pub seed: u64,
    pub rng_algorithm: &'static str,
    pub block_size: u64,
    pub num_samples: u64,
    pub target_labels: Vec<String>,
    /// count-tuple -> occurrences; tuple order follows the target list.
    pub joint: BTreeMap<Vec<u32>, u64>,
    /// Multigraph draws attempted, including those discarded by
    /// conditioning (equal to num_samples without conditioning).
    pub mg_draws: u64,
    /// Degree sequences attempted across all draws.
    pub degree_sequence_attempts: u64,
}

impl SampleBatch {
    pub fn total(&self) -> u64 {
        self.num_samples
    }

    /// Marginal histogram of target `idx`.
    pub fn marginal(&self, idx: usize) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for (tuple, &count) in &self.joint {
            *out.entry(tuple[idx]).or_insert(0) += count;
        }
        out
    }

    pub fn mean(&self, idx: usize) -> f64 {
        if self.num_samples == 0 {
            return f64::NAN;
        }
        let sum: f64 = self
            .joint
            .iter()
            .map(|(tuple, &c)| tuple[idx] as f64 * c as f64)
            .sum();
        sum / self.num_samples as f64
    }

    /// Fraction of multigraph draws that survived the simple-graph
    /// conditioning; None without conditioning.
    pub fn acceptance_rate(&self) -> Option<f64> {
        if self.condition_simple && self.mg_draws > 0 {
            Some(self.num_samples as f64 / self.mg_draws as f64)
        } else {
            None
        }
    }

    pub fn tv_distance(&self, idx: usize, law: &PoissonLaw) -> f64 {
        tv_distance(&self.marginal(idx), self.num_samples, law)
    }

    pub fn joint_independence_gap(&self, laws: &[PoissonLaw]) -> f64 {
        joint_independence_gap(&self.joint, self.num_samples, laws)
    }

    /// CSV histogram `t,count` for one target.
    pub fn write_csv(&self, idx: usize, out: &mut impl Write) -> Result<()> {
        writeln!(out, "t,count")?;
        for (t, count) in self.marginal(idx) {
            writeln!(out, "{t},{count}")?;
        }
        Ok(())
    }

    /// JSON sidecar with the run parameters and any supplied diagnostics.
    pub fn sidecar_json(
        &self,
        lambda_targets: Option<&[f64]>,
        tv: Option<&[f64]>,
        independence_gap: Option<f64>,
    ) -> serde_json::Value {
        serde_json::json!({
            "model": self.model,
            "n": self.n,
            "m": self.m,
            "degrees": self.degrees,
            "condition_simple": self.condition_simple,
            "seed": self.seed,
            "rng_algorithm": self.rng_algorithm,
            "block_size": self.block_size,
            "num_samples": self.num_samples,
            "targets": self.target_labels,
            "lambda_target": lambda_targets,
            "tv_distance": tv,
            "independence_gap": independence_gap,
            "mg_draws": if self.model == "dc" { Some(self.mg_draws) } else { None },
            "acceptance_rate": self.acceptance_rate(),
        })
    }
}

#[derive(Default)]
struct BlockTally {
    joint: BTreeMap<Vec<u32>, u64>,
    mg_draws: u64,
    seq_attempts: u64,
    error: Option<String>,
}

fn merge_tallies(mut a: BlockTally, b: BlockTally) -> BlockTally {
    for (k, v) in b.joint {
        *a.joint.entry(k).or_insert(0) += v;
    }
    a.mg_draws += b.mg_draws;
    a.seq_attempts += b.seq_attempts;
    if a.error.is_none() {
        a.error = b.error;
    }
    a
}

/// Sample the model `cfg.num_samples` times and histogram the joint counts
/// of every target.
pub fn empirical_distribution(
    model: &Model,
    targets: &[CountTarget],
    cfg: &BatchConfig,
) -> Result<SampleBatch> {
    validate_targets(model, targets)?;
    if let Model::DegreeConstrained { degrees, n, m, .. } = model {
        // surface infeasibility before spawning workers
        DcSampler::new(*n, *m, degrees, cfg.max_seq_attempts)?;
    }
    let max_cycle = targets
        .iter()
        .filter_map(|t| match t {
            CountTarget::Cycle(j) => Some(*j),
            _ => None,
        })
        .max();

    let blocks = cfg.num_samples.div_ceil(cfg.block_size);
    let tally = run_blocks(
        blocks,
        cfg.mode,
        |b| {
            let quota = cfg
                .block_size
                .min(cfg.num_samples - b * cfg.block_size);
            let mut rng = block_rng(cfg.seed, b);
            let mut tally = BlockTally::default();
            let mut workspace = CycleWorkspace::new();
            match model {
                Model::Gnm { n, m } => {
                    for _ in 0..quota {
                        let g = sample_gnm(*n, *m, &mut rng);
                        tally.mg_draws += 1;
                        let tuple = count_graph_targets(&g, targets, max_cycle, &mut workspace);
                        *tally.joint.entry(tuple).or_insert(0) += 1;
                    }
                }
                Model::DegreeConstrained {
                    degrees,
                    n,
                    m,
                    condition_simple,
                } => {
                    let sampler = DcSampler::new(*n, *m, degrees, cfg.max_seq_attempts);
                    let mut sampler = match sampler {
                        Ok(s) => s,
                        Err(e) => {
                            tally.error = Some(e.to_string());
                            return tally;
                        }
                    };
                    let mut accepted = 0u64;
                    while accepted < quota {
                        match sampler.draw(&mut rng) {
                            Ok(attempts) => tally.seq_attempts += attempts,
                            Err(e) => {
                                tally.error = Some(e.to_string());
                                return tally;
                            }
                        }
                        tally.mg_draws += 1;
                        let census =
                            workspace.census(*n, sampler.edges(), max_cycle.unwrap_or(2));
                        if *condition_simple && !census.is_simple() {
                            continue;
                        }
                        accepted += 1;
                        let tuple = count_mg_targets(*n, sampler.edges(), &census, targets);
                        *tally.joint.entry(tuple).or_insert(0) += 1;
                    }
                }
            }
            tally
        },
        merge_tallies,
    )
    .unwrap_or_default();

    if let Some(msg) = tally.error {
        return Err(Error::SamplerStall(msg));
    }

    let (model_label, n, m, degrees, condition_simple) = match model {
        Model::Gnm { n, m } => (model.label(), *n, *m, None, false),
        Model::DegreeConstrained {
            degrees,
            n,
            m,
            condition_simple,
        } => (
            model.label(),
            *n,
            *m,
            Some(degrees.degrees().to_vec()),
            *condition_simple,
        ),
    };
    Ok(SampleBatch {
        model: model_label.to_string(),
        n,
        m,
        degrees,
        condition_simple,
        seed: cfg.seed,
        rng_algorithm: RNG_ALGORITHM,
        block_size: cfg.block_size,
        num_samples: cfg.num_samples,
        target_labels: targets.iter().map(|t| t.label()).collect(),
        joint: tally.joint,
        mg_draws: tally.mg_draws,
        degree_sequence_attempts: tally.seq_attempts,
    })
}

fn validate_targets(model: &Model, targets: &[CountTarget]) -> Result<()> {
    for t in targets {
        match (model, t) {
            (Model::Gnm { .. }, CountTarget::Multigraph(_)) => {
                return Err(Error::MixedKinds(
                    "multigraph pattern against the simple-graph model",
                ))
            }
            (Model::Gnm { .. }, CountTarget::Cycle(j)) if *j < 3 => {
                return Err(Error::MixedKinds(
                    "loops/parallel pairs cannot occur in simple graphs",
                ))
            }
            (Model::DegreeConstrained { .. }, CountTarget::Graph(_)) => {
                return Err(Error::MixedKinds(
                    "simple-graph pattern against the multigraph model; convert it",
                ))
            }
            _ => {}
        }
    }
    Ok(())
}

fn count_graph_targets(
    g: &LabeledGraph,
    targets: &[CountTarget],
    max_cycle: Option<u32>,
    workspace: &mut CycleWorkspace,
) -> Vec<u32> {
    let cycle_counts = max_cycle.map(|k| workspace.census(g.n(), g.edges(), k).per_length);
    targets
        .iter()
        .map(|t| match t {
            CountTarget::Cycle(j) => cycle_counts.as_ref().expect("computed")[*j as usize] as u32,
            CountTarget::Graph(pat) => subgraph_count(g, pat) as u32,
            CountTarget::Multigraph(_) => unreachable!("validated"),
        })
        .collect()
}

fn count_mg_targets(
    n: u32,
    edges: &[(u32, u32)],
    census: &CycleCounts,
    targets: &[CountTarget],
) -> Vec<u32> {
    let mut mg: Option<LabeledMultigraph> = None;
    targets
        .iter()
        .map(|t| match t {
            CountTarget::Cycle(j) => census.count(*j) as u32,
            CountTarget::Multigraph(pat) => {
                let g = mg.get_or_insert_with(|| {
                    LabeledMultigraph::new(n, edges.to_vec()).expect("sampler output is valid")
                });
                subgraph_count_multigraph(g, pat) as u32
            }
            CountTarget::Graph(_) => unreachable!("validated"),
        })
        .collect()
}

/// Total-variation distance between the empirical histogram and a Poisson
/// law: half the l1 gap on the observed support plus half the law's mass
/// beyond it. NaN for an empty histogram.
pub fn tv_distance(hist: &BTreeMap<u32, u64>, total: u64, law: &PoissonLaw) -> f64 {
    if total == 0 {
        return f64::NAN;
    }
    let top = hist.keys().next_back().copied().unwrap_or(0);
    let mut gap = 0.0;
    for t in 0..=top {
        let observed = hist.get(&t).copied().unwrap_or(0) as f64 / total as f64;
        gap += (observed - law.pmf(t)).abs();
    }
    0.5 * (gap + law.survival_above(top))
}

/// Distance between the joint histogram and the product of the target
/// marginal laws; zero iff the counts look independently Poisson.
pub fn joint_independence_gap(
    joint: &BTreeMap<Vec<u32>, u64>,
    total: u64,
    laws: &[PoissonLaw],
) -> f64 {
    if total == 0 {
        return f64::NAN;
    }
    let mut gap = 0.0;
    let mut covered = 0.0;
    for (tuple, &count) in joint {
        assert_eq!(tuple.len(), laws.len());
        let q: f64 = tuple
            .iter()
            .zip(laws)
            .map(|(&t, law)| law.pmf(t))
            .product();
        covered += q;
        gap += (count as f64 / total as f64 - q).abs();
    }
    0.5 * (gap + (1.0 - covered).max(0.0))
}
