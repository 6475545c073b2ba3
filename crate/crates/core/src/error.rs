use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("oracle bound exceeded: {what} = {got}, configured limit {limit}")]
    BoundsExceeded {
        what: &'static str,
        got: u64,
        limit: u64,
    },

    #[error("coefficient request outside truncation: {var}^{requested} but series is truncated at {var}^{trunc}")]
    TruncationExceeded {
        var: char,
        requested: u32,
        trunc: u32,
    },

    #[error("series contract violated: {0}")]
    SeriesContract(String),

    #[error("cannot mix simple graphs and multigraphs: {0}")]
    MixedKinds(&'static str),

    #[error("infeasible parameters: {0}")]
    Infeasible(String),

    #[error("pattern is not strictly balanced: {0}")]
    NotStrictlyBalanced(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("sampler stalled: {0}")]
    SamplerStall(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
