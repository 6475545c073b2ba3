//! Counting copies of a fixed pattern in uniform random (n,m)-graphs and
//! degree-constrained (n,m,D)-multigraphs.
//!
//! The crate has three layers:
//!
//! * exact machinery — truncated multivariate series with rational
//!   coefficients, coefficient-extraction counting formulas, patchwork
//!   inclusion-exclusion, and exhaustive enumeration oracles that verify
//!   every exact identity at small scale;
//! * asymptotic estimators — saddle-point evaluations of the same formulas
//!   in log space, Poisson parameters for strictly balanced patterns, and
//!   cycle statistics of degree-constrained models;
//! * Monte Carlo — uniform samplers for both models with reproducible
//!   seeding, histogram collection, and total-variation/independence
//!   diagnostics against the predicted Poisson laws.

pub mod census;
pub mod degree;
pub mod error;
pub mod graph;
pub mod numbers;
pub mod par;
pub mod patchwork;
pub mod sampler;
pub mod series;

pub use error::{Error, Result};
pub use par::ExecMode;
