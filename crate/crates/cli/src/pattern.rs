//! Pattern resolution shared by the subcommands.

use crate::CliError;
use std::path::Path;
use subgraph_census::graph::patterns::{pattern_graph, PatternName};
use subgraph_census::graph::LabeledGraph;
use subgraph_census::sampler::CountTarget;

pub struct ResolvedPattern {
    pub label: String,
    pub graph: LabeledGraph,
}

pub fn resolve(
    named: Option<&str>,
    file: Option<&Path>,
) -> Result<ResolvedPattern, CliError> {
    match (named, file) {
        (Some(name), None) => {
            let parsed: PatternName = name.parse()?;
            Ok(ResolvedPattern {
                label: parsed.to_string(),
                graph: pattern_graph(parsed)?,
            })
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)?;
            Ok(ResolvedPattern {
                label: path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| "pattern".into()),
                graph: LabeledGraph::parse(&text)?,
            })
        }
        _ => Err(CliError::new(
            1,
            "exactly one of --pattern / --pattern-file is required",
        )),
    }
}

/// Count target for the sampler: cycles take the dedicated counter, other
/// patterns the generic matcher.
pub fn gnm_target(name: &PatternName, graph: &LabeledGraph) -> CountTarget {
    match name {
        PatternName::C3 => CountTarget::Cycle(3),
        PatternName::C4 => CountTarget::Cycle(4),
        PatternName::Cycle(j) => CountTarget::Cycle(*j),
        _ => CountTarget::Graph(graph.clone()),
    }
}

pub fn parse_degree_list(spec: &str) -> Result<Vec<u32>, CliError> {
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| CliError::new(1, format!("invalid degree {tok:?}")))
        })
        .collect()
}

pub fn parse_cycle_list(spec: &str) -> Result<Vec<u32>, CliError> {
    let cycles: Vec<u32> = spec
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| CliError::new(1, format!("invalid cycle length {tok:?}")))
        })
        .collect::<Result<_, _>>()?;
    if cycles.is_empty() {
        return Err(CliError::new(1, "need at least one cycle length"));
    }
    Ok(cycles)
}
