//! Named pattern registry and the shape summaries the counting formulas
//! consume (vertex count, edge count, automorphisms, vertex degrees).

use super::{
    automorphism_count, automorphism_count_multigraph, LabeledGraph, LabeledMultigraph,
};
use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternName {
    K2,
    Path3,
    C3,
    C4,
    K4,
    Cycle(u32),
}

impl fmt::Display for PatternName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternName::K2 => write!(f, "k2"),
            PatternName::Path3 => write!(f, "path3"),
            PatternName::C3 => write!(f, "c3"),
            PatternName::C4 => write!(f, "c4"),
            PatternName::K4 => write!(f, "k4"),
            PatternName::Cycle(j) => write!(f, "cycle:{j}"),
        }
    }
}

impl FromStr for PatternName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "k2" => Ok(PatternName::K2),
            "path3" => Ok(PatternName::Path3),
            "c3" => Ok(PatternName::C3),
            "c4" => Ok(PatternName::C4),
            "k4" => Ok(PatternName::K4),
            other => {
                if let Some(j) = other.strip_prefix("cycle:") {
                    let j: u32 = j.parse().map_err(|_| Error::Parse {
                        line: 0,
                        msg: format!("invalid cycle length in {other:?}"),
                    })?;
                    Ok(PatternName::Cycle(j))
                } else {
                    Err(Error::Parse {
                        line: 0,
                        msg: format!("unknown pattern {other:?}"),
                    })
                }
            }
        }
    }
}

/// Pattern as a simple graph. Cycles need length >= 3 here; lengths 1 and 2
/// only exist as multigraphs.
pub fn pattern_graph(name: PatternName) -> Result<LabeledGraph> {
    match name {
        PatternName::K2 => LabeledGraph::new(2, [(1, 2)]),
        PatternName::Path3 => LabeledGraph::new(3, [(1, 2), (2, 3)]),
        PatternName::C3 => cycle_graph(3),
        PatternName::C4 => cycle_graph(4),
        PatternName::K4 => LabeledGraph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]),
        PatternName::Cycle(j) => cycle_graph(j),
    }
}

fn cycle_graph(j: u32) -> Result<LabeledGraph> {
    if j < 3 {
        return Err(Error::Infeasible(format!(
            "cycle length {j} requires a multigraph (loops/parallel edges)"
        )));
    }
    let mut edges: Vec<(u32, u32)> = (1..j).map(|i| (i, i + 1)).collect();
    edges.push((1, j));
    LabeledGraph::new(j, edges)
}

/// Pattern as a multigraph; cycle:1 is the loop, cycle:2 the double edge.
pub fn pattern_multigraph(name: PatternName) -> Result<LabeledMultigraph> {
    match name {
        PatternName::Cycle(1) => LabeledMultigraph::new(1, vec![(1, 1)]),
        PatternName::Cycle(2) => LabeledMultigraph::new(2, vec![(1, 2), (1, 2)]),
        other => {
            let g = pattern_graph(other)?;
            Ok(graph_as_multigraph(&g))
        }
    }
}

/// Reinterpret a simple graph as a multigraph pattern (arbitrary
/// orientations and labels; counting is isomorphism-invariant).
pub fn graph_as_multigraph(g: &LabeledGraph) -> LabeledMultigraph {
    LabeledMultigraph::new(g.n(), g.edges().to_vec()).expect("valid by construction")
}

/// The numeric summary of one pattern used by every counting formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternShape {
    pub vertices: u32,
    pub edges: u64,
    pub automorphisms: u64,
    /// Vertex degrees, sorted ascending (half-edge degrees for multigraphs).
    pub degrees: Vec<u32>,
}

impl PatternShape {
    pub fn of_graph(g: &LabeledGraph) -> Self {
        let mut degrees = g.degrees();
        degrees.sort_unstable();
        PatternShape {
            vertices: g.n(),
            edges: g.m(),
            automorphisms: automorphism_count(g),
            degrees,
        }
    }

    pub fn of_multigraph(g: &LabeledMultigraph) -> Self {
        let mut degrees = g.degrees();
        degrees.sort_unstable();
        PatternShape {
            vertices: g.n(),
            edges: g.m(),
            automorphisms: automorphism_count_multigraph(g),
            degrees,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_names() {
        for s in ["k2", "path3", "c3", "c4", "k4", "cycle:5", "cycle:1"] {
            let name: PatternName = s.parse().unwrap();
            assert_eq!(name.to_string(), s);
        }
        assert!("c9".parse::<PatternName>().is_err());
        assert!("cycle:x".parse::<PatternName>().is_err());
    }

    #[test]
    fn shapes() {
        let c3 = PatternShape::of_graph(&pattern_graph(PatternName::C3).unwrap());
        assert_eq!(
            c3,
            PatternShape {
                vertices: 3,
                edges: 3,
                automorphisms: 6,
                degrees: vec![2, 2, 2]
            }
        );
        let loop_shape =
            PatternShape::of_multigraph(&pattern_multigraph(PatternName::Cycle(1)).unwrap());
        assert_eq!(loop_shape.vertices, 1);
        assert_eq!(loop_shape.edges, 1);
        assert_eq!(loop_shape.automorphisms, 2);
        assert_eq!(loop_shape.degrees, vec![2]);
    }

    #[test]
    fn simple_cycles_reject_short_lengths() {
        assert!(pattern_graph(PatternName::Cycle(2)).is_err());
        assert!(pattern_multigraph(PatternName::Cycle(2)).is_ok());
    }
}
