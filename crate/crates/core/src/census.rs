//! Exact counts, asymptotic estimators, expected counts and Poisson
//! parameters for uniform (n,m)-graphs.
//!
//! The exact routes run entirely through the series engine with rational
//! arithmetic: they are identities, not approximations, and the enumeration
//! oracles confirm them cell by cell. The estimators evaluate the same
//! expressions in log space.

use crate::error::{Error, Result};
use crate::graph::patterns::PatternShape;
use crate::graph::{essential_density, is_strictly_balanced, LabeledGraph};
use crate::numbers;
use crate::patchwork::{patchwork_gf, PatchworkTable};
use crate::series::{
    binom_power, exp_vertices, expect_integer, TruncSeries, Var,
};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

/// An asymptotic regime m = c * n^beta.
#[derive(Clone, Debug, Serialize)]
pub struct RegimeSpec {
    pub c: f64,
    pub beta: f64,
    pub description: String,
}

impl RegimeSpec {
    pub fn new(c: f64, beta: f64, description: impl Into<String>) -> Result<Self> {
        if !(c > 0.0) || !(beta > 0.0 && beta < 2.0) {
            return Err(Error::Infeasible(format!(
                "regime needs c > 0 and 0 < beta < 2, got c = {c}, beta = {beta}"
            )));
        }
        Ok(RegimeSpec {
            c,
            beta,
            description: description.into(),
        })
    }

    /// The appearance-threshold window for a strictly balanced pattern:
    /// beta = 2 - 1/d with d the pattern density.
    pub fn poisson_window(pattern: &LabeledGraph, c: f64) -> Result<Self> {
        let shape = PatternShape::of_graph(pattern);
        let d = shape.edges as f64 / shape.vertices as f64;
        RegimeSpec::new(
            c,
            2.0 - 1.0 / d,
            format!("m = {c} n^(2 - 1/{d})"),
        )
    }

    pub fn edges_for(&self, n: u64) -> u64 {
        (self.c * (n as f64).powf(self.beta)).round() as u64
    }
}

/// Generating series of a family given by pattern shapes: each pattern
/// contributes w^edges z^vertices / automorphisms. Entire in both
/// variables (families here are finite pattern lists).
pub fn family_gf(shapes: &[PatternShape]) -> TruncSeries {
    let mut s = TruncSeries::zero();
    for shape in shapes {
        s = s.add(&TruncSeries::monomial(
            BigRational::new(BigInt::one(), BigInt::from(shape.automorphisms)),
            [shape.vertices as u16, shape.edges as u16, 0, 0],
        ));
    }
    s
}

/// Number of (n,m)-graphs with one family member distinguished:
/// n! [z^n w^m] F(z, w/(1+w)) e^z (1+w)^C(n,2).
pub fn distinguished_count_exact(family: &TruncSeries, n: u64, m: u64) -> Result<BigInt> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::Infeasible(format!("m = {m} exceeds C({n},2) = {pairs}")));
    }
    for (var, need) in [(Var::Z, n), (Var::W, m)] {
        if let Some(t) = family.trunc(var) {
            if (t as u64) < need {
                return Err(Error::TruncationExceeded {
                    var: if var == Var::Z { 'z' } else { 'w' },
                    requested: need as u32,
                    trunc: t as u32,
                });
            }
        }
    }
    let family = family
        .clone()
        .with_trunc(Var::Z, n as u16)
        .with_trunc(Var::W, m as u16);
    let kernel = family
        .subst_edge_var()?
        .mul(&exp_vertices(n as u16))
        .mul(&binom_power(pairs, m as u16));
    let coeff = kernel.extract([n as u16, m as u16, 0, 0])?;
    let count = expect_integer(&(coeff * BigRational::from_integer(numbers::factorial(n))));
    debug_assert!(!count.is_negative());
    Ok(count)
}

#[derive(Clone, Copy, Debug)]
pub struct AsymptoticEstimate {
    pub value: f64,
    pub ln: f64,
}

/// Family evaluation for the right-hand side of the distinguished-count
/// estimate. The z-power is evaluated as a falling factorial (the number of
/// pattern placements on n labels), which keeps the single-edge estimator
/// exactly equal to the exact count while agreeing with n^k to first order.
pub fn gnm_family_eval_ln(shapes: &[PatternShape], n: u64, m: u64) -> f64 {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut terms = Vec::with_capacity(shapes.len());
    for s in shapes {
        if (s.vertices as u64) > n || (s.edges > 0 && m == 0) {
            continue;
        }
        let ln_fall = ln_gamma(n as f64 + 1.0) - ln_gamma((n - s.vertices as u64) as f64 + 1.0);
        let ln_edge = s.edges as f64 * ((m as f64).ln() - (pairs as f64).ln());
        terms.push(-(s.automorphisms as f64).ln() + ln_fall + ln_edge);
    }
    log_sum_exp(&terms)
}

/// C(C(n,2), m) * F(n, m/C(n,2)) in log space.
pub fn distinguished_count_asymptotic(
    shapes: &[PatternShape],
    n: u64,
    m: u64,
) -> AsymptoticEstimate {
    let pairs = n * n.saturating_sub(1) / 2;
    let ln = numbers::ln_binomial(pairs, m) + gnm_family_eval_ln(shapes, n, m);
    AsymptoticEstimate { value: ln.exp(), ln }
}

/// The same estimator in exact rational arithmetic:
/// C(C(n,2), m) * sum over patterns of (n)_k m^l / (aut N^l).
/// Used to assert identities the float path can only approximate.
pub fn asymptotic_estimate_exact(shapes: &[PatternShape], n: u64, m: u64) -> BigRational {
    let pairs = n * n.saturating_sub(1) / 2;
    let binom = BigRational::from_integer(numbers::binomial(pairs, m));
    let mut total = BigRational::zero();
    for s in shapes {
        if (s.vertices as u64) > n {
            continue;
        }
        if s.edges > 0 && m == 0 {
            continue;
        }
        let fall = BigRational::from_integer(numbers::falling(n, s.vertices as u64));
        let edge = BigRational::new(
            BigInt::from(m).pow(s.edges as u32),
            BigInt::from(pairs).pow(s.edges as u32),
        );
        let aut = BigRational::from_integer(BigInt::from(s.automorphisms));
        total += fall * edge / aut;
    }
    binom * total
}

/// E(G[F]) for a uniform (n,m)-graph: the distinguished count over the
/// total number of graphs. Exact arithmetic at desk scale, the log-space
/// estimator beyond it.
pub fn expected_count(pattern: &LabeledGraph, n: u64, m: u64) -> Result<f64> {
    let shape = PatternShape::of_graph(pattern);
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::Infeasible(format!("m = {m} exceeds C({n},2)")));
    }
    const EXACT_N: u64 = 12;
    const EXACT_M: u64 = 14;
    if n <= EXACT_N && m <= EXACT_M {
        let exact = distinguished_count_exact(&family_gf(&[shape]), n, m)?;
        let total = numbers::binomial(pairs, m);
        return Ok(numbers::ratio_to_f64(&BigRational::new(exact, total)));
    }
    Ok(gnm_family_eval_ln(&[shape], n, m).exp())
}

/// The edge-exponent below which the pattern is almost surely absent:
/// 2 - 1/d* with d* the essential density.
pub fn aas_absence_threshold(pattern: &LabeledGraph) -> f64 {
    let report = essential_density(pattern);
    let d = report.density.numer().to_owned() as f64 / report.density.denom().to_owned() as f64;
    2.0 - 1.0 / d
}

/// Growth exponent of E(G[F]) under m = O(n^alpha): l* (alpha - 2 + 1/d*).
pub fn expected_count_exponent(pattern: &LabeledGraph, alpha: f64) -> f64 {
    let report = essential_density(pattern);
    let d = report.density.numer().to_owned() as f64 / report.density.denom().to_owned() as f64;
    report.edges as f64 * (alpha - 2.0 + 1.0 / d)
}

/// Exact distribution of the number of F-subgraphs over all (n,m)-graphs:
/// SG_t = n! [z^n w^m u^t] Patch(z, w/(1+w), u-1) e^z (1+w)^C(n,2),
/// returned as the vector indexed by t = 0..=t_max.
pub fn sg_exact(table: &PatchworkTable, n: u64, m: u64) -> Result<Vec<BigInt>> {
    if n > table.n_max() as u64 || m > table.m_max() as u64 {
        return Err(Error::BoundsExceeded {
            what: "patchwork table coverage",
            got: n.max(m),
            limit: table.n_max().max(table.m_max()) as u64,
        });
    }
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::Infeasible(format!("m = {m} exceeds C({n},2) = {pairs}")));
    }
    let kernel = patchwork_gf(table)
        .with_trunc(Var::Z, n as u16)
        .with_trunc(Var::W, m as u16)
        .shift_u_minus_one()
        .subst_edge_var()?
        .mul(&exp_vertices(n as u16))
        .mul(&binom_power(pairs, m as u16));
    let nfact = BigRational::from_integer(numbers::factorial(n));
    let mut out = Vec::with_capacity(table.t_max() as usize + 1);
    for t in 0..=table.t_max() {
        let c = kernel.extract([n as u16, m as u16, t as u16, 0])?;
        let count = expect_integer(&(c * nfact.clone()));
        assert!(
            !count.is_negative(),
            "inclusion-exclusion produced a negative count at t = {t}"
        );
        out.push(count);
    }
    Ok(out)
}

/// Poisson parameter (2c)^l / aut at the appearance threshold of a
/// strictly balanced pattern.
pub fn poisson_lambda_gnm(pattern: &LabeledGraph, regime: &RegimeSpec) -> Result<f64> {
    if !is_strictly_balanced(pattern) {
        return Err(Error::NotStrictlyBalanced(
            "the Poisson limit needs a strictly balanced pattern".into(),
        ));
    }
    let shape = PatternShape::of_graph(pattern);
    let d = shape.edges as f64 / shape.vertices as f64;
    let want_beta = 2.0 - 1.0 / d;
    if (regime.beta - want_beta).abs() > 1e-9 {
        return Err(Error::Infeasible(format!(
            "regime beta = {} but the pattern's threshold window is beta = {want_beta}",
            regime.beta
        )));
    }
    Ok((2.0 * regime.c).powi(shape.edges as i32) / shape.automorphisms as f64)
}

/// Poisson law helpers shared by the validation harness.
#[derive(Clone, Copy, Debug)]
pub struct PoissonLaw {
    pub lambda: f64,
}

impl PoissonLaw {
    pub fn new(lambda: f64) -> Self {
        assert!(lambda >= 0.0);
        PoissonLaw { lambda }
    }

    pub fn pmf(&self, t: u32) -> f64 {
        poisson_pmf(self.lambda, t)
    }

    /// P(T > t).
    pub fn survival_above(&self, t: u32) -> f64 {
        let mut cdf = 0.0;
        for i in 0..=t {
            cdf += self.pmf(i);
        }
        (1.0 - cdf).max(0.0)
    }
}

pub fn poisson_pmf(lambda: f64, t: u32) -> f64 {
    if lambda == 0.0 {
        return if t == 0 { 1.0 } else { 0.0 };
    }
    (t as f64 * lambda.ln() - lambda - ln_gamma(t as f64 + 1.0)).exp()
}

fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return f64::NEG_INFINITY;
    }
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// One evaluated census cell, serialized with exact values as decimal
/// strings so consumers never lose precision.
#[derive(Clone, Debug)]
pub struct CensusResult {
    pub n: u64,
    pub m: u64,
    pub pattern: String,
    pub exact: Option<BigInt>,
    pub asymptotic: f64,
    pub asymptotic_ln: f64,
    pub relative_error: Option<f64>,
}

impl CensusResult {
    pub fn evaluate(pattern: &LabeledGraph, name: &str, n: u64, m: u64) -> Result<Self> {
        let shape = PatternShape::of_graph(pattern);
        let est = distinguished_count_asymptotic(std::slice::from_ref(&shape), n, m);
        const EXACT_N: u64 = 16;
        let exact = if n <= EXACT_N {
            Some(distinguished_count_exact(&family_gf(&[shape]), n, m)?)
        } else {
            None
        };
        let relative_error = exact.as_ref().and_then(|e| {
            if e.is_zero() {
                None
            } else {
                Some(numbers::relative_error_ln(e, est.ln))
            }
        });
        Ok(CensusResult {
            n,
            m,
            pattern: name.to_string(),
            exact,
            asymptotic: est.value,
            asymptotic_ln: est.ln,
            relative_error,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "m": self.m,
            "pattern": self.pattern,
            "exact": self.exact.as_ref().map(|e| e.to_string()),
            "asymptotic": self.asymptotic,
            "asymptotic_ln": self.asymptotic_ln,
            "relative_error": self.relative_error,
        })
    }
}
