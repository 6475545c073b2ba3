//! Sequential vs parallel throughput of the batch sampler and the
//! patchwork table builder. With the `parallel` feature disabled both
//! arms run the sequential path.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use subgraph_census::degree::DegreeSet;
use subgraph_census::graph::patterns::{pattern_graph, PatternName};
use subgraph_census::patchwork::build_table;
use subgraph_census::sampler::{empirical_distribution, BatchConfig, CountTarget, Model};
use subgraph_census::ExecMode;

const MODES: [(&str, ExecMode); 2] = [
    ("sequential", ExecMode::Sequential),
    ("parallel", ExecMode::Parallel),
];

fn bench_gnm_triangles(c: &mut Criterion) {
    let mut group = c.benchmark_group("gnm_triangle_batch");
    group.sample_size(10);
    let model = Model::Gnm { n: 600, m: 300 };
    let targets = [CountTarget::Cycle(3)];
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                let cfg = BatchConfig::new(2_000, 42)
                    .with_block_size(64)
                    .with_mode(mode);
                empirical_distribution(&model, &targets, &cfg).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_dc_cycles(c: &mut Criterion) {
    let mut group = c.benchmark_group("dc_cycle_batch");
    group.sample_size(10);
    let model = Model::DegreeConstrained {
        degrees: DegreeSet::new([1, 3]).unwrap(),
        n: 500,
        m: 500,
        condition_simple: true,
    };
    let targets = [
        CountTarget::Cycle(3),
        CountTarget::Cycle(4),
        CountTarget::Cycle(5),
    ];
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                let cfg = BatchConfig::new(200, 7)
                    .with_block_size(16)
                    .with_mode(mode);
                empirical_distribution(&model, &targets, &cfg).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_patchwork_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("patchwork_table_c3");
    group.sample_size(10);
    let c3 = pattern_graph(PatternName::C3).unwrap();
    for (name, mode) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| build_table(&c3, 6, 8, mode).unwrap())
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_gnm_triangles,
    bench_dc_cycles,
    bench_patchwork_table
);
criterion_main!(benches);
