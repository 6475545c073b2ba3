//! Subcommand implementations.

use crate::pattern::{self, parse_cycle_list, parse_degree_list};
use crate::{CensusArgs, CliError, DegseqArgs, SampleDcArgs, SampleGnmArgs};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use subgraph_census::census::{
    poisson_lambda_gnm, sg_exact, CensusResult, PoissonLaw, RegimeSpec,
};
use subgraph_census::degree::{
    cycle_lambdas, mg_count, mg_count_ln, simple_graph_count_estimate, solve_chi, DegreeSet,
};
use subgraph_census::graph::patterns::{PatternName, PatternShape};
use subgraph_census::graph::{enumerate_graphs, subgraph_count, OracleBounds};
use subgraph_census::numbers::BigInt;
use subgraph_census::patchwork::build_table_cached;
use subgraph_census::sampler::{
    empirical_distribution, BatchConfig, CountTarget, Model, SampleBatch,
};
use subgraph_census::ExecMode;

pub const CACHE_DIR_ENV: &str = "SUBGRAPH_CENSUS_CACHE_DIR";

const SG_TABLE_MAX_N: u64 = 7;

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            if let Some(dir) = p.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir)?;
                }
            }
            std::fs::write(p, contents)?;
        }
        None => print!("{contents}"),
    }
    Ok(())
}

pub fn census(args: CensusArgs) -> Result<(), CliError> {
    let resolved = pattern::resolve(args.pattern.as_deref(), args.pattern_file.as_deref())?;
    let pairs = args.n * args.n.saturating_sub(1) / 2;
    if args.m > pairs {
        return Err(CliError::new(
            3,
            format!("m = {} exceeds C({},2) = {pairs}", args.m, args.n),
        ));
    }
    let result = CensusResult::evaluate(&resolved.graph, &resolved.label, args.n, args.m)?;

    let sg: Option<Vec<_>> = if !args.no_distribution && args.n <= SG_TABLE_MAX_N {
        let table = build_table_cached(
            &resolved.graph,
            args.n as u32,
            args.m as u32,
            ExecMode::default(),
            cache_dir().as_deref(),
        )?;
        Some(sg_exact(&table, args.n, args.m)?)
    } else {
        None
    };

    let verified = if args.verify {
        let sg = sg.as_ref().ok_or_else(|| {
            CliError::new(
                4,
                format!("--verify needs the distribution table, available for n <= {SG_TABLE_MAX_N}"),
            )
        })?;
        verify_against_oracle(&resolved.graph, args.n, args.m, &result, sg)?;
        Some(true)
    } else {
        None
    };

    let contents = match args.format.as_str() {
        "csv" => {
            let sg = sg.as_ref().ok_or_else(|| {
                CliError::new(1, "csv output is the t,count distribution; none was computed")
            })?;
            let mut out = String::from("t,count\n");
            for (t, count) in sg.iter().enumerate() {
                out.push_str(&format!("{t},{count}\n"));
            }
            out
        }
        _ => {
            let mut json = result.to_json();
            json["sg"] = match &sg {
                Some(counts) => serde_json::Value::Array(
                    counts
                        .iter()
                        .enumerate()
                        .map(|(t, c)| serde_json::json!({"t": t, "count": c.to_string()}))
                        .collect(),
                ),
                None => serde_json::Value::Null,
            };
            json["verified"] = serde_json::json!(verified);
            format!("{}\n", serde_json::to_string_pretty(&json).expect("valid json"))
        }
    };
    write_output(args.output.as_deref(), &contents)
}

/// Re-derive both sides from the enumeration stream and demand equality:
/// the per-t histogram against the extracted distribution, the
/// distinguished total against the sum of pattern counts, and the mass
/// balance against C(C(n,2), m).
fn verify_against_oracle(
    pattern: &subgraph_census::graph::LabeledGraph,
    n: u64,
    m: u64,
    result: &CensusResult,
    sg: &[BigInt],
) -> Result<(), CliError> {
    let bounds = OracleBounds::default();
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    let mut marked_total = 0u64;
    let mut graphs = 0u64;
    for g in enumerate_graphs(n as u32, m, &bounds)? {
        let count = subgraph_count(&g, pattern);
        *hist.entry(count).or_insert(0) += 1;
        marked_total += count;
        graphs += 1;
    }

    let exact = result
        .exact
        .as_ref()
        .ok_or_else(|| CliError::new(4, "no exact count available to verify"))?;
    if *exact != BigInt::from(marked_total) {
        return Err(CliError::new(
            2,
            format!("distinguished count {exact} != oracle total {marked_total}"),
        ));
    }
    for (t, count) in sg.iter().enumerate() {
        let oracle = hist.get(&(t as u64)).copied().unwrap_or(0);
        if *count != BigInt::from(oracle) {
            return Err(CliError::new(
                2,
                format!("distribution mismatch at t = {t}: formula {count}, oracle {oracle}"),
            ));
        }
    }
    if let Some((&top, _)) = hist.iter().next_back() {
        if top as usize >= sg.len() && hist[&top] > 0 {
            return Err(CliError::new(
                2,
                format!("oracle found graphs with {top} copies beyond the distribution support"),
            ));
        }
    }
    let mass: BigInt = sg.iter().sum();
    if mass != BigInt::from(graphs) {
        return Err(CliError::new(
            2,
            format!("distribution mass {mass} != number of graphs {graphs}"),
        ));
    }
    Ok(())
}

pub fn degseq(args: DegseqArgs) -> Result<(), CliError> {
    let degrees = parse_degree_list(&args.degrees)?;
    let dset = DegreeSet::new(degrees.iter().copied())?;
    let (m, ratio) = resolve_edges(args.n as u64, args.edge_ratio, args.m)?;
    let sol = solve_chi(&dset, ratio)?;
    let lambdas = cycle_lambdas(args.k_max, args.n, m, &dset)?;
    let simple = simple_graph_count_estimate(args.n, m, &dset)?;
    let mg_exact = if 2 * m <= args.exact_mg_limit {
        Some(mg_count(args.n, m, &dset))
    } else {
        None
    };
    let mg_ln = mg_count_ln(args.n, m, &dset)?;

    let contents = match args.format.as_str() {
        "csv" => {
            let mut out = String::from("j,lambda\n");
            for &(j, lambda) in &lambdas.cycles {
                out.push_str(&format!("{j},{lambda}\n"));
            }
            out
        }
        _ => {
            let json = serde_json::json!({
                "degrees": dset.degrees(),
                "period": dset.period(),
                "aperiodic": dset.is_aperiodic(),
                "n": args.n,
                "m": m,
                "edge_ratio": ratio,
                "chi": sol.chi,
                "chi_residual": sol.residual,
                "chi_iterations": sol.iterations,
                "mg": mg_exact.as_ref().map(|v| v.to_string()),
                "mg_ln": mg_ln,
                "rho": lambdas.rho,
                "lambda1": lambdas.lambda1,
                "lambda2": lambdas.lambda2,
                "lambdas": lambdas.cycles.iter()
                    .map(|&(j, l)| serde_json::json!({"j": j, "lambda": l}))
                    .collect::<Vec<_>>(),
                "simple_graph_estimate": {
                    "ln": simple.ln,
                    "value": simple.value,
                    "correction": simple.correction,
                },
            });
            format!("{}\n", serde_json::to_string_pretty(&json).expect("valid json"))
        }
    };
    write_output(args.output.as_deref(), &contents)
}

fn resolve_edges(n: u64, edge_ratio: Option<f64>, m: Option<u64>) -> Result<(u64, f64), CliError> {
    match (edge_ratio, m) {
        (Some(r), None) => {
            let m = (r * n as f64 / 2.0).round() as u64;
            Ok((m, 2.0 * m as f64 / n as f64))
        }
        (None, Some(m)) => Ok((m, 2.0 * m as f64 / n as f64)),
        _ => Err(CliError::new(1, "give exactly one of --edge-ratio / --m")),
    }
}

pub fn sample_gnm(args: SampleGnmArgs) -> Result<(), CliError> {
    let name: PatternName = args.pattern.parse()?;
    let graph = subgraph_census::graph::patterns::pattern_graph(name)?;
    let shape = PatternShape::of_graph(&graph);
    let d = shape.edges as f64 / shape.vertices as f64;
    let beta = 2.0 - 1.0 / d;
    let m = match (args.m, args.c) {
        (Some(m), None) => m,
        (None, Some(c)) => (c * (args.n as f64).powf(beta)).round() as u64,
        (None, None) => return Err(CliError::new(1, "give one of --m / --c")),
        _ => unreachable!("clap conflicts"),
    };
    // the lambda target uses the c implied by the realized edge count
    let c_actual = m as f64 / (args.n as f64).powf(beta);
    let lambda = RegimeSpec::new(c_actual, beta, "sampling window")
        .and_then(|regime| poisson_lambda_gnm(&graph, &regime))
        .ok();

    let model = Model::Gnm { n: args.n, m };
    let targets = [pattern::gnm_target(&name, &graph)];
    let cfg = batch_config(args.samples, args.seed, args.block_size, args.sequential);
    let batch = empirical_distribution(&model, &targets, &cfg)?;

    let tv = lambda.map(|l| vec![batch.tv_distance(0, &PoissonLaw::new(l))]);
    let prefix = args.prefix.unwrap_or_else(|| {
        format!("gnm_{}_n{}_m{}_s{}", name_slug(&args.pattern), args.n, m, args.seed)
    });
    write_batch_outputs(
        &args.out,
        &prefix,
        &batch,
        &[name_slug(&args.pattern)],
        lambda.map(|l| vec![l]).as_deref(),
        tv.as_deref(),
        None,
    )
}

pub fn sample_dc(args: SampleDcArgs) -> Result<(), CliError> {
    let degrees = parse_degree_list(&args.degrees)?;
    let dset = DegreeSet::new(degrees.iter().copied())?;
    let (m, _ratio) = resolve_edges(args.n as u64, args.edge_ratio, args.m)?;
    let cycles = parse_cycle_list(&args.cycles)?;
    let k_max = cycles.iter().copied().max().unwrap_or(3).max(3);
    let lambdas = cycle_lambdas(k_max, args.n as u64, m, &dset)?;
    let lambda_targets: Vec<f64> = cycles.iter().map(|&j| lambdas.lambda(j)).collect();

    let model = Model::DegreeConstrained {
        degrees: dset,
        n: args.n,
        m,
        condition_simple: args.condition_simple,
    };
    let targets: Vec<CountTarget> = cycles.iter().map(|&j| CountTarget::Cycle(j)).collect();
    let cfg = batch_config(args.samples, args.seed, args.block_size, args.sequential);
    let batch = empirical_distribution(&model, &targets, &cfg)?;

    let tv: Vec<f64> = lambda_targets
        .iter()
        .enumerate()
        .map(|(i, &l)| batch.tv_distance(i, &PoissonLaw::new(l)))
        .collect();
    let gap = if cycles.len() >= 2 {
        let laws: Vec<PoissonLaw> = lambda_targets.iter().map(|&l| PoissonLaw::new(l)).collect();
        Some(batch.joint_independence_gap(&laws))
    } else {
        None
    };

    let prefix = args.prefix.unwrap_or_else(|| {
        let dslug: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
        format!(
            "dc_d{}_n{}_m{}_s{}{}",
            dslug.join("-"),
            args.n,
            m,
            args.seed,
            if args.condition_simple { "_simple" } else { "" }
        )
    });
    let labels: Vec<String> = cycles.iter().map(|j| format!("cycle{j}")).collect();
    write_batch_outputs(
        &args.out,
        &prefix,
        &batch,
        &labels,
        Some(&lambda_targets),
        Some(&tv),
        gap,
    )
}

fn batch_config(samples: u64, seed: u64, block_size: u64, sequential: bool) -> BatchConfig {
    BatchConfig::new(samples, seed)
        .with_block_size(block_size)
        .with_mode(if sequential {
            ExecMode::Sequential
        } else {
            ExecMode::Parallel
        })
}

fn name_slug(name: &str) -> String {
    name.replace(':', "")
}

fn write_batch_outputs(
    out_dir: &Path,
    prefix: &str,
    batch: &SampleBatch,
    labels: &[String],
    lambda_targets: Option<&[f64]>,
    tv: Option<&[f64]>,
    independence_gap: Option<f64>,
) -> Result<(), CliError> {
    std::fs::create_dir_all(out_dir)?;
    for (idx, label) in labels.iter().enumerate() {
        let path = out_dir.join(format!("{prefix}_{label}.csv"));
        let mut file = std::fs::File::create(&path)?;
        batch.write_csv(idx, &mut file)?;
        println!("wrote {}", path.display());
    }
    let sidecar = batch.sidecar_json(lambda_targets, tv, independence_gap);
    let path = out_dir.join(format!("{prefix}.json"));
    let mut file = std::fs::File::create(&path)?;
    writeln!(
        file,
        "{}",
        serde_json::to_string_pretty(&sidecar).expect("valid json")
    )?;
    println!("wrote {}", path.display());
    Ok(())
}
