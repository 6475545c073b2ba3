//! Acceptance suite: every criterion below re-derives a counting formula
//! or a limit law from an independent route (exhaustive enumeration or
//! Monte Carlo) and gates the build on the stated tolerance. Each test
//! prints one pass line; run with `--nocapture` to see them.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{ToPrimitive, Zero};
use std::collections::{BTreeMap, HashMap};
use subgraph_census::census::{
    asymptotic_estimate_exact, distinguished_count_asymptotic, distinguished_count_exact,
    family_gf, sg_exact, PoissonLaw,
};
use subgraph_census::degree::{
    cycle_lambdas, distinguished_dc_asymptotic, distinguished_dc_exact, mg_count, DegreeSet,
};
use subgraph_census::graph::patterns::{
    pattern_graph, pattern_multigraph, PatternName, PatternShape,
};
use subgraph_census::graph::{
    enumerate_graphs, enumerate_multigraphs, subgraph_count, subgraph_count_multigraph,
    OracleBounds,
};
use subgraph_census::numbers::{binomial, relative_error_ln};
use subgraph_census::patchwork::build_table;
use subgraph_census::sampler::{
    block_rng, chi_square_uniform, empirical_distribution, sample_gnm, BatchConfig, CountTarget,
    DcSampler, Model,
};
use subgraph_census::series::DegreeMarkedGF;
use subgraph_census::ExecMode;

fn pass(criterion: u32, label: &str, detail: String) {
    println!("[acceptance] criterion {criterion} ({label}): PASS — {detail}");
}

const GNM_PATTERNS: [PatternName; 5] = [
    PatternName::K2,
    PatternName::Path3,
    PatternName::C3,
    PatternName::C4,
    PatternName::K4,
];

/// Criterion 1: the distinguished-count extraction equals the exhaustive
/// sum of pattern counts over every (n,m)-graph, n <= 6, all m. Exact.
#[test]
fn criterion_1_distinguished_count_exactness() {
    let bounds = OracleBounds::default();
    let mut cells = 0u64;
    for name in GNM_PATTERNS {
        let pattern = pattern_graph(name).unwrap();
        let family = family_gf(&[PatternShape::of_graph(&pattern)]);
        for n in 1..=6u64 {
            let pairs = n * (n - 1) / 2;
            for m in 0..=pairs {
                let formula = distinguished_count_exact(&family, n, m).unwrap();
                let oracle: u64 = enumerate_graphs(n as u32, m, &bounds)
                    .unwrap()
                    .map(|g| subgraph_count(&g, &pattern))
                    .sum();
                assert_eq!(
                    formula,
                    BigInt::from(oracle),
                    "{name:?} at ({n},{m}): formula {formula} vs oracle {oracle}"
                );
                cells += 1;
            }
        }
    }
    pass(1, "distinguished-count exactness", format!("{cells} cells, 5 patterns, exact equality"));
}

/// Criterion 2: the inclusion-exclusion distribution matches the oracle
/// histogram for K2 and C3 on every (n,m) with n <= 5, and its mass is
/// C(C(n,2), m). Exact.
#[test]
fn criterion_2_subgraph_distribution_exactness() {
    let bounds = OracleBounds::default();
    let mut cells = 0u64;
    for name in [PatternName::K2, PatternName::C3] {
        let pattern = pattern_graph(name).unwrap();
        let table = build_table(&pattern, 5, 10, ExecMode::Parallel).unwrap();
        for n in 1..=5u64 {
            let pairs = n * (n - 1) / 2;
            for m in 0..=pairs {
                let sg = sg_exact(&table, n, m).unwrap();
                let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
                for g in enumerate_graphs(n as u32, m, &bounds).unwrap() {
                    *hist.entry(subgraph_count(&g, &pattern)).or_insert(0) += 1;
                }
                for (t, count) in sg.iter().enumerate() {
                    let oracle = hist.get(&(t as u64)).copied().unwrap_or(0);
                    assert_eq!(
                        *count,
                        BigInt::from(oracle),
                        "{name:?} at ({n},{m}), t = {t}"
                    );
                }
                if let Some((&top, &c)) = hist.iter().next_back() {
                    assert!(c == 0 || (top as usize) < sg.len(), "support escape at ({n},{m})");
                }
                let mass: BigInt = sg.iter().sum();
                assert_eq!(mass, binomial(pairs, m), "mass at ({n},{m})");
                cells += 1;
            }
        }
    }
    pass(2, "subgraph-distribution exactness", format!("{cells} cells for K2 and C3, exact equality + mass balance"));
}

/// Criterion 3: the half-edge coefficient extraction counts multigraphs
/// exactly on every n <= 3, m <= 3 and every nonempty D within {0,1,2,3}.
#[test]
fn criterion_3_multigraph_count_exactness() {
    let bounds = OracleBounds::default();
    let mut cells = 0u64;
    for mask in 1u32..16 {
        let degrees: Vec<u32> = (0..4).filter(|d| mask & (1 << d) != 0).collect();
        let dset = DegreeSet::new(degrees.iter().copied()).unwrap();
        for n in 1..=3u64 {
            for m in 0..=3u64 {
                let formula = mg_count(n, m, &dset);
                let oracle = enumerate_multigraphs(n as u32, m, Some(&degrees), &bounds)
                    .unwrap()
                    .count() as u64;
                assert_eq!(
                    formula,
                    BigInt::from(oracle),
                    "D={degrees:?} at ({n},{m})"
                );
                cells += 1;
            }
        }
    }
    // the spot values
    assert_eq!(mg_count(2, 1, &DegreeSet::new([1]).unwrap()), BigInt::from(2));
    assert_eq!(mg_count(3, 3, &DegreeSet::new([2]).unwrap()), BigInt::from(90));
    pass(3, "multigraph-count exactness", format!("{cells} (n,m,D) cells, exact equality incl. MG(2,1,{{1}})=2, MG(3,3,{{2}})=90"));
}

/// Criterion 4: the degree-marked distinguished count is exact — the
/// one-edge family yields m * MG on every criterion-3 cell, and the
/// triangle family matches the enumeration oracle, including the raised-
/// bound cell (4,4,{1,3}).
#[test]
fn criterion_4_degree_constrained_distinguished_exactness() {
    let one_edge = DegreeMarkedGF::one_edge_family();
    let mut cells = 0u64;
    for mask in 1u32..16 {
        let degrees: Vec<u32> = (0..4).filter(|d| mask & (1 << d) != 0).collect();
        let dset = DegreeSet::new(degrees.iter().copied()).unwrap();
        for n in 1..=3u64 {
            for m in 0..=3u64 {
                let lhs = distinguished_dc_exact(&one_edge, n, m, &dset).unwrap();
                let rhs = BigInt::from(m) * mg_count(n, m, &dset);
                assert_eq!(lhs, rhs, "one-edge family, D={degrees:?} ({n},{m})");
                cells += 1;
            }
        }
    }

    let c3 = pattern_multigraph(PatternName::C3).unwrap();
    let c3_family = DegreeMarkedGF::from_pattern(&c3);
    let mut oracle_cells = Vec::new();
    for (n, m, degrees) in [
        (4u64, 4u64, vec![1u32, 3]),
        (3, 3, vec![2]),
        (4, 5, vec![1, 3]),
    ] {
        let dset = DegreeSet::new(degrees.iter().copied()).unwrap();
        let raised = OracleBounds::raised(7, 4, 5);
        let formula = distinguished_dc_exact(&c3_family, n, m, &dset).unwrap();
        let oracle: u64 = enumerate_multigraphs(n as u32, m, Some(&degrees), &raised)
            .unwrap()
            .map(|g| subgraph_count_multigraph(&g, &c3))
            .sum();
        assert_eq!(formula, BigInt::from(oracle), "triangle family at ({n},{m},{degrees:?})");
        oracle_cells.push(format!("({n},{m},{degrees:?})={oracle}"));
    }
    pass(4, "degree-constrained distinguished exactness", format!("one-edge identity on {cells} cells; triangle oracle cells {}", oracle_cells.join(", ")));
}

/// Criterion 5: triangle counts in G(3000, 1500) follow Poisson(1/6):
/// TV <= 0.02 over 1e5 samples and mean within 10%.
#[test]
fn criterion_5_gnm_poisson_law() {
    let lambda = 1.0 / 6.0;
    let model = Model::Gnm { n: 3000, m: 1500 };
    let cfg = BatchConfig::new(100_000, 20260801).with_block_size(256);
    let batch = empirical_distribution(&model, &[CountTarget::Cycle(3)], &cfg).unwrap();
    let tv = batch.tv_distance(0, &PoissonLaw::new(lambda));
    let mean = batch.mean(0);
    let mean_err = (mean - lambda).abs() / lambda;
    assert!(tv <= 0.02, "TV = {tv}");
    assert!(mean_err <= 0.10, "mean = {mean}, relative gap {mean_err}");
    pass(5, "triangle Poisson law in G(n,m)", format!("TV = {tv:.4} <= 0.02, mean = {mean:.4} (target {lambda:.4}, gap {:.2}%)", 100.0 * mean_err));
}

/// Criterion 6: cycle counts of conditioned simple (n, n, {1,3})-graphs at
/// n = 1e4 are independent Poissons with lambda_j = (3/2)^j/(2j): per-cycle
/// TV <= 0.03, joint gap <= 0.05, and the conditioning acceptance rate sits
/// within 3 sigma of exp(-3/4 - 9/16).
#[test]
fn criterion_6_degree_constrained_cycle_laws() {
    let degrees = DegreeSet::new([1, 3]).unwrap();
    let n = 10_000u32;
    let m = 10_000u64;
    let lambdas = cycle_lambdas(5, n as u64, m, &degrees).unwrap();
    assert!((lambdas.rho - 1.5).abs() < 1e-9);
    let targets = [
        CountTarget::Cycle(3),
        CountTarget::Cycle(4),
        CountTarget::Cycle(5),
    ];
    let model = Model::DegreeConstrained {
        degrees,
        n,
        m,
        condition_simple: true,
    };
    let cfg = BatchConfig::new(20_000, 20260802).with_block_size(128);
    let batch = empirical_distribution(&model, &targets, &cfg).unwrap();

    let laws: Vec<PoissonLaw> = [3u32, 4, 5]
        .iter()
        .map(|&j| PoissonLaw::new(lambdas.lambda(j)))
        .collect();
    let mut tvs = Vec::new();
    for (idx, law) in laws.iter().enumerate() {
        let tv = batch.tv_distance(idx, law);
        assert!(tv <= 0.03, "cycle {} TV = {tv}", idx + 3);
        tvs.push(tv);
    }
    let gap = batch.joint_independence_gap(&laws);
    assert!(gap <= 0.05, "independence gap = {gap}");

    let target_rate = (-lambdas.lambda1 - lambdas.lambda2).exp();
    let rate = batch.acceptance_rate().expect("conditioned run");
    let sigma = (target_rate * (1.0 - target_rate) / batch.mg_draws as f64).sqrt();
    assert!(
        (rate - target_rate).abs() <= 3.0 * sigma,
        "acceptance {rate} vs {target_rate} (3 sigma = {})",
        3.0 * sigma
    );
    pass(6, "degree-constrained cycle laws", format!(
        "TV(C3..C5) = {:.4}/{:.4}/{:.4} <= 0.03, joint gap = {gap:.4} <= 0.05, acceptance {rate:.4} vs {target_rate:.4} (|z| = {:.2})",
        tvs[0], tvs[1], tvs[2], (rate - target_rate).abs() / sigma
    ));
}

/// Criterion 7: the saddle-point estimators converge — for the triangle
/// (both models) the relative error is finite and non-increasing along
/// n = 8, 10, 12 with m = n, and for K2 in G(n,m) the estimator equals the
/// exact count identically.
#[test]
fn criterion_7_asymptotic_estimator_convergence() {
    // G(n,m) side
    let c3 = PatternShape::of_graph(&pattern_graph(PatternName::C3).unwrap());
    let family = family_gf(&[c3.clone()]);
    let mut prev = f64::INFINITY;
    let mut gnm_errs = Vec::new();
    for n in [8u64, 10, 12] {
        let exact = distinguished_count_exact(&family, n, n).unwrap();
        assert!(!exact.is_zero());
        let est = distinguished_count_asymptotic(std::slice::from_ref(&c3), n, n);
        let rel = relative_error_ln(&exact, est.ln);
        assert!(rel.is_finite() && rel <= prev, "n = {n}: {rel} after {prev}");
        gnm_errs.push(rel);
        prev = rel;
    }

    // degree-constrained side, D = {1,3}
    let dset = DegreeSet::new([1, 3]).unwrap();
    let c3_mg = DegreeMarkedGF::from_pattern(&pattern_multigraph(PatternName::C3).unwrap());
    let mut prev = f64::INFINITY;
    let mut dc_errs = Vec::new();
    for n in [8u64, 10, 12] {
        let exact = distinguished_dc_exact(&c3_mg, n, n, &dset).unwrap();
        assert!(!exact.is_zero());
        let est = distinguished_dc_asymptotic(&c3_mg, n, n, &dset).unwrap();
        let rel = relative_error_ln(&exact, est.ln);
        assert!(rel.is_finite() && rel <= prev, "dc n = {n}: {rel} after {prev}");
        dc_errs.push(rel);
        prev = rel;
    }

    // K2: the estimator is the exact count at every cell (rational identity)
    let k2_shape = PatternShape::of_graph(&pattern_graph(PatternName::K2).unwrap());
    let k2_family = family_gf(&[k2_shape.clone()]);
    let mut k2_cells = 0u64;
    for n in 2..=6u64 {
        let pairs = n * (n - 1) / 2;
        for m in 1..=pairs {
            let exact = distinguished_count_exact(&k2_family, n, m).unwrap();
            let est = asymptotic_estimate_exact(std::slice::from_ref(&k2_shape), n, m);
            assert_eq!(BigRational::from_integer(exact), est, "K2 at ({n},{m})");
            // and the float path agrees to rounding
            let est_f = distinguished_count_asymptotic(std::slice::from_ref(&k2_shape), n, m);
            let exact_f = distinguished_count_exact(&k2_family, n, m)
                .unwrap()
                .to_f64()
                .unwrap();
            assert!((est_f.value - exact_f).abs() <= 1e-9 * exact_f.max(1.0));
            k2_cells += 1;
        }
    }
    pass(7, "asymptotic estimator convergence", format!(
        "gnm rel err {:.3}->{:.3}->{:.3}, dc rel err {:.3}->{:.3}->{:.3}, K2 exact on {k2_cells} cells",
        gnm_errs[0], gnm_errs[1], gnm_errs[2], dc_errs[0], dc_errs[1], dc_errs[2]
    ));
}

/// Criterion 8: sampler uniformity — chi-square over all 20 (4,3)-graphs
/// at 1e5 samples and all 90 (3,3,{2})-multigraphs at 1e6 samples, both at
/// significance 1e-3.
#[test]
fn criterion_8_sampler_uniformity() {
    // G(4,3): key cells by edge list
    let bounds = OracleBounds::default();
    let mut cells: HashMap<Vec<(u32, u32)>, usize> = HashMap::new();
    for (i, g) in enumerate_graphs(4, 3, &bounds).unwrap().enumerate() {
        cells.insert(g.edges().to_vec(), i);
    }
    assert_eq!(cells.len(), 20);
    let mut observed = vec![0u64; cells.len()];
    let mut rng = block_rng(20260803, 0);
    for _ in 0..100_000u64 {
        let g = sample_gnm(4, 3, &mut rng);
        observed[cells[g.edges()]] += 1;
    }
    let gnm_test = chi_square_uniform(&observed);
    assert!(
        gnm_test.p_value >= 1e-3,
        "gnm chi-square p = {}",
        gnm_test.p_value
    );

    // (3,3,{2})-multigraphs: key cells by the oriented labeled edge list
    let dset = DegreeSet::new([2]).unwrap();
    let mut mg_cells: HashMap<Vec<(u32, u32)>, usize> = HashMap::new();
    for (i, g) in enumerate_multigraphs(3, 3, Some(&[2]), &bounds)
        .unwrap()
        .enumerate()
    {
        mg_cells.insert(g.edges().to_vec(), i);
    }
    assert_eq!(mg_cells.len(), 90);
    let mut observed = vec![0u64; mg_cells.len()];
    let mut sampler = DcSampler::new(3, 3, &dset, 1_000_000).unwrap();
    let mut rng = block_rng(20260804, 0);
    for _ in 0..1_000_000u64 {
        sampler.draw(&mut rng).unwrap();
        observed[mg_cells[sampler.edges()]] += 1;
    }
    let mg_test = chi_square_uniform(&observed);
    assert!(
        mg_test.p_value >= 1e-3,
        "multigraph chi-square p = {}",
        mg_test.p_value
    );
    pass(8, "sampler uniformity", format!(
        "gnm chi2 p = {:.4} (20 cells, 1e5 draws), multigraph chi2 p = {:.4} (90 cells, 1e6 draws)",
        gnm_test.p_value, mg_test.p_value
    ));
}

/// Determinism contract behind criteria 5, 6 and 8: identical results
/// across execution modes and reruns for a fixed seed.
#[test]
fn determinism_across_modes() {
    let model = Model::DegreeConstrained {
        degrees: DegreeSet::new([1, 3]).unwrap(),
        n: 60,
        m: 60,
        condition_simple: true,
    };
    let targets = [CountTarget::Cycle(3), CountTarget::Cycle(4)];
    let cfg = BatchConfig::new(300, 5)
        .with_block_size(32)
        .with_mode(ExecMode::Sequential);
    let a = empirical_distribution(&model, &targets, &cfg).unwrap();
    let b = empirical_distribution(
        &model,
        &targets,
        &cfg.clone().with_mode(ExecMode::Parallel),
    )
    .unwrap();
    assert_eq!(a.joint, b.joint);
    assert_eq!(a.mg_draws, b.mg_draws);
}
