//! Degree-constrained multigraphs: the degree-set polynomial, the tilt
//! parameter chi, exact counts by half-edge coefficient extraction, the
//! distinguished-subgraph formula with degree marks, Poisson parameters for
//! strictly balanced patterns, cycle statistics, and the loop/double-edge
//! correction that bridges multigraphs to simple graphs.

use crate::error::{Error, Result};
use crate::graph::patterns::PatternShape;
use crate::graph::{essential_density, is_strictly_balanced, LabeledMultigraph};
use crate::numbers;
use crate::series::{DegreeMarkedGF, XPoly};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use statrs::function::gamma::ln_gamma;

/// A finite set of admissible degrees with its generating polynomial
/// Delta(x) = sum over d in D of x^d/d!.
///
/// Construction only requires a nonempty set. The asymptotic statements
/// additionally want at least two degrees and aperiodicity
/// (gcd of d - min(D) equal to 1); both are recorded as queries because the
/// exact counting and enumeration paths are meaningful without them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSet {
    degrees: Vec<u32>,
    delta: XPoly,
}

impl DegreeSet {
    pub fn new(degrees: impl IntoIterator<Item = u32>) -> Result<Self> {
        let mut degrees: Vec<u32> = degrees.into_iter().collect();
        degrees.sort_unstable();
        degrees.dedup();
        if degrees.is_empty() {
            return Err(Error::Infeasible("degree set must be nonempty".into()));
        }
        let mut delta = XPoly::zero();
        for &d in &degrees {
            delta = delta.add(&XPoly::monomial(
                BigRational::new(BigInt::one(), numbers::factorial(d as u64)),
                d as usize,
            ));
        }
        Ok(DegreeSet { degrees, delta })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn min_degree(&self) -> u32 {
        self.degrees[0]
    }

    pub fn max_degree(&self) -> u32 {
        *self.degrees.last().unwrap()
    }

    pub fn contains(&self, d: u32) -> bool {
        self.degrees.binary_search(&d).is_ok()
    }

    /// gcd of d - min(D); 0 for a singleton, 1 means aperiodic.
    pub fn period(&self) -> u32 {
        self.degrees
            .iter()
            .map(|&d| d - self.min_degree())
            .fold(0u32, |g, d| g.gcd(&d))
    }

    pub fn is_aperiodic(&self) -> bool {
        self.period() == 1
    }

    pub fn delta(&self) -> &XPoly {
        &self.delta
    }

    pub fn delta_derivative(&self, order: u32) -> XPoly {
        self.delta.nth_derivative(order)
    }

    /// Delta^(order) evaluated at x.
    pub fn delta_deriv_at(&self, order: u32, x: f64) -> f64 {
        self.delta.nth_derivative(order).eval_f64(x)
    }
}

/// The solved tilt chi with convergence diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct ChiSolution {
    pub chi: f64,
    pub target: f64,
    pub residual: f64,
    pub iterations: u32,
}

const CHI_TOLERANCE: f64 = 1e-12;

/// Solve chi Delta'(chi)/Delta(chi) = ratio on (0, infinity). The map is
/// strictly increasing from min(D) to max(D), so a bracketed Newton
/// iteration with bisection fallback always converges; the residual is
/// required to reach 1e-12.
pub fn solve_chi(dset: &DegreeSet, ratio: f64) -> Result<ChiSolution> {
    let lo_deg = dset.min_degree() as f64;
    let hi_deg = dset.max_degree() as f64;
    if dset.min_degree() == dset.max_degree() {
        return Err(Error::Infeasible(format!(
            "degree set {{{}}} is a single degree: 2m/n = {} is the regular case, any other ratio admits no objects",
            dset.min_degree(),
            lo_deg
        )));
    }
    if ratio <= lo_deg || ratio >= hi_deg {
        let side = if ratio == lo_deg || ratio == hi_deg {
            "the boundary ratio forces a regular graph"
        } else {
            "no degree assignment attains this ratio"
        };
        return Err(Error::Infeasible(format!(
            "2m/n = {ratio} lies outside the open interval ({lo_deg}, {hi_deg}): {side}"
        )));
    }

    let delta = dset.delta();
    let d1 = delta.derivative();
    let d2 = d1.derivative();
    let map = |x: f64| x * d1.eval_f64(x) / delta.eval_f64(x);
    let map_deriv = |x: f64| {
        let f = delta.eval_f64(x);
        let f1 = d1.eval_f64(x);
        let f2 = d2.eval_f64(x);
        (f1 + x * f2) / f - x * f1 * f1 / (f * f)
    };

    let mut lo = 1e-9;
    let mut guard = 0;
    while map(lo) >= ratio {
        lo *= 1e-3;
        guard += 1;
        if guard > 100 {
            return Err(Error::Infeasible(format!(
                "could not bracket chi below for ratio {ratio}"
            )));
        }
    }
    let mut hi = 1.0;
    guard = 0;
    while map(hi) <= ratio {
        hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::Infeasible(format!(
                "could not bracket chi above for ratio {ratio}"
            )));
        }
    }

    let mut x = 0.5 * (lo + hi);
    let mut iterations = 0u32;
    let mut residual;
    for _ in 0..200 {
        iterations += 1;
        let f = map(x) - ratio;
        residual = f.abs();
        if residual <= CHI_TOLERANCE {
            break;
        }
        if f > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let slope = map_deriv(x);
        let newton = x - f / slope;
        x = if newton.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
    }
    residual = (map(x) - ratio).abs();
    if residual > CHI_TOLERANCE {
        return Err(Error::Infeasible(format!(
            "chi iteration stalled at residual {residual:e} for ratio {ratio}"
        )));
    }
    Ok(ChiSolution {
        chi: x,
        target: ratio,
        residual,
        iterations,
    })
}

/// Exact number of (n,m,D)-multigraphs: (2m)! [x^(2m)] Delta(x)^n.
/// Infeasible parameter combinations come out as a plain zero.
pub fn mg_count(n: u64, m: u64, dset: &DegreeSet) -> BigInt {
    let target = 2 * m as usize;
    // integer-scaled polynomial: Delta(x) * M! has integer coefficients
    let scale = numbers::factorial(dset.max_degree() as u64);
    let mut poly = vec![BigInt::zero(); dset.max_degree() as usize + 1];
    for &d in dset.degrees() {
        poly[d as usize] = &scale / numbers::factorial(d as u64);
    }
    let coeff = int_poly_pow_coeff(&poly, n, target);
    if coeff.is_zero() {
        return BigInt::zero();
    }
    let numer = numbers::factorial(2 * m) * coeff;
    let denom = scale.pow(n as u32);
    let (q, r) = numer.div_rem(&denom);
    debug_assert!(r.is_zero(), "multigraph count must be integral");
    q
}

/// [x^target] of poly^n with dense big-integer arithmetic.
fn int_poly_pow_coeff(poly: &[BigInt], mut exp: u64, target: usize) -> BigInt {
    let trim = |v: &mut Vec<BigInt>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    let mul = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let len = (a.len() + b.len() - 1).min(target + 1);
        let mut out = vec![BigInt::zero(); len];
        for (i, ca) in a.iter().enumerate() {
            if i > target || ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if i + j > target {
                    break;
                }
                if cb.is_zero() {
                    continue;
                }
                out[i + j] += ca * cb;
            }
        }
        let mut out = out;
        trim(&mut out);
        out
    };
    let mut base: Vec<BigInt> = poly.to_vec();
    trim(&mut base);
    let mut acc = vec![BigInt::one()];
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(&acc, &base);
        }
        exp >>= 1;
        if exp > 0 {
            base = mul(&base, &base);
        }
    }
    acc.get(target).cloned().unwrap_or_else(BigInt::zero)
}

/// ln MG via the large-powers saddle point:
/// ln (2m)! + n ln Delta(chi) - 2m ln chi - ln sqrt(2 pi n sigma^2),
/// with a lattice factor when the degree set has period > 1 (feasibility
/// of 2m on the lattice is the caller's concern; infeasible inputs have
/// MG = 0 and no meaningful estimate).
pub fn mg_count_ln(n: u64, m: u64, dset: &DegreeSet) -> Result<f64> {
    let ratio = 2.0 * m as f64 / n as f64;
    let sol = solve_chi(dset, ratio)?;
    let chi = sol.chi;
    let delta = dset.delta().eval_f64(chi);
    let mean = ratio;
    let second = chi * chi * dset.delta_deriv_at(2, chi) / delta;
    let variance = second + mean - mean * mean;
    let lattice = dset.period().max(1) as f64;
    Ok(ln_gamma(2.0 * m as f64 + 1.0) + n as f64 * delta.ln()
        - 2.0 * m as f64 * chi.ln()
        - 0.5 * (2.0 * std::f64::consts::PI * n as f64 * variance).ln()
        + lattice.ln())
}

/// Exact number of (n,m,D)-multigraphs with one distinguished family
/// member. Per family term (c, k, l, degrees) only j = m - l survives the
/// w-extraction, leaving a univariate coefficient:
/// c (n)_k 2^l (m)_l (2j)! [x^(2j)] prod_v Delta^(deg v)(x) * Delta(x)^(n-k).
pub fn distinguished_dc_exact(
    family: &DegreeMarkedGF,
    n: u64,
    m: u64,
    dset: &DegreeSet,
) -> Result<BigInt> {
    let mut total = BigRational::zero();
    for term in family.terms() {
        if term.edges > m || term.vertices as u64 > n {
            continue;
        }
        let j = m - term.edges;
        let target = (2 * j) as usize;
        let mut xpart = XPoly::one();
        for &d in &term.degrees {
            let deriv = dset.delta_derivative(d);
            if deriv.is_zero() {
                xpart = XPoly::zero();
                break;
            }
            xpart = xpart.mul_trunc(&deriv, target);
        }
        if xpart.is_zero() {
            continue;
        }
        let rest = dset.delta().pow_trunc(n - term.vertices as u64, target);
        let coeff = xpart.mul_trunc(&rest, target).coeff(target);
        if coeff.is_zero() {
            continue;
        }
        let factor = BigRational::from_integer(
            numbers::falling(n, term.vertices as u64)
                * (BigInt::one() << term.edges)
                * numbers::falling(m, term.edges)
                * numbers::factorial(2 * j),
        );
        total += &term.coeff * factor * coeff;
    }
    let count = crate::series::expect_integer(&total);
    debug_assert!(!count.is_negative());
    Ok(count)
}

#[derive(Clone, Copy, Debug)]
pub struct DcAsymptotic {
    pub value: f64,
    pub ln: f64,
    pub chi: f64,
}

/// MG_{n,m,D} * F(n/Delta(chi), chi^2/(2m), (Delta(chi), Delta'(chi), ...)).
/// MG is exact below a size cutoff and saddle-point approximated beyond it.
pub fn distinguished_dc_asymptotic(
    family: &DegreeMarkedGF,
    n: u64,
    m: u64,
    dset: &DegreeSet,
) -> Result<DcAsymptotic> {
    let ratio = 2.0 * m as f64 / n as f64;
    let sol = solve_chi(dset, ratio)?;
    let chi = sol.chi;
    let delta = dset.delta().eval_f64(chi);

    let mut terms = Vec::new();
    for term in family.terms() {
        let mut ln_term = numbers::ratio_to_f64(&term.coeff).ln()
            + term.vertices as f64 * ((n as f64).ln() - delta.ln())
            + term.edges as f64 * (2.0 * chi.ln() - (2.0 * m as f64).ln());
        let mut dead = false;
        for &d in &term.degrees {
            let v = dset.delta_deriv_at(d, chi);
            if v <= 0.0 {
                dead = true;
                break;
            }
            ln_term += v.ln();
        }
        if !dead {
            terms.push(ln_term);
        }
    }
    let ln_family = {
        let max = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if max.is_finite() {
            max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
        } else {
            f64::NEG_INFINITY
        }
    };

    const EXACT_HALF_EDGES: u64 = 2000;
    let ln_mg = if 2 * m <= EXACT_HALF_EDGES {
        let exact = mg_count(n, m, dset);
        if exact.is_zero() {
            return Err(Error::Infeasible(format!(
                "no ({n},{m},D)-multigraphs exist"
            )));
        }
        numbers::ln_bigint(&exact)
    } else {
        mg_count_ln(n, m, dset)?
    };
    let ln = ln_mg + ln_family;
    Ok(DcAsymptotic {
        value: ln.exp(),
        ln,
        chi,
    })
}

/// E(G[F]) over uniform (n,m,D)-multigraphs, exact at desk scale.
pub fn expected_count_dc(
    pattern: &LabeledMultigraph,
    n: u64,
    m: u64,
    dset: &DegreeSet,
) -> Result<f64> {
    const EXACT_N: u64 = 12;
    const EXACT_M: u64 = 14;
    let family = DegreeMarkedGF::from_pattern(pattern);
    if n <= EXACT_N && m <= EXACT_M {
        let total = mg_count(n, m, dset);
        if total.is_zero() {
            return Err(Error::Infeasible(format!(
                "no ({n},{m},D)-multigraphs exist"
            )));
        }
        let dist = distinguished_dc_exact(&family, n, m, dset)?;
        return Ok(numbers::ratio_to_f64(&BigRational::new(dist, total)));
    }
    let est = distinguished_dc_asymptotic(&family, n, m, dset)?;
    let ln_mg = if 2 * m <= 2000 {
        numbers::ln_bigint(&mg_count(n, m, dset))
    } else {
        mg_count_ln(n, m, dset)?
    };
    Ok((est.ln - ln_mg).exp())
}

/// Growth exponent l*(1/d* - 1) of the expected count when m = Theta(n).
pub fn dc_absence_exponent(pattern: &LabeledMultigraph) -> f64 {
    let report = essential_density(pattern);
    let d = *report.density.numer() as f64 / *report.density.denom() as f64;
    report.edges as f64 * (1.0 / d - 1.0)
}

/// Connected patterns denser than a unicycle vanish almost surely when
/// m = Theta(n): the expected-count exponent is negative iff d* > 1.
pub fn is_aas_absent(pattern: &LabeledMultigraph) -> bool {
    let report = essential_density(pattern);
    *report.density.numer() > *report.density.denom()
}

#[derive(Clone, Copy, Debug)]
pub struct DcLambda {
    pub value: f64,
    /// n-exponent k - l of the evaluated product when m = Theta(n);
    /// nonzero means the value drifts with n instead of stabilizing.
    pub growth_exponent: i64,
}

/// The Poisson-parameter product for a strictly balanced multigraph:
/// (1/aut) n^k/(2m)^l chi^(2l)/Delta(chi)^k prod_v Delta^(deg v)(chi).
pub fn poisson_lambda_dc(
    pattern: &LabeledMultigraph,
    n: u64,
    m: u64,
    dset: &DegreeSet,
) -> Result<DcLambda> {
    if !is_strictly_balanced(pattern) {
        return Err(Error::NotStrictlyBalanced(
            "the Poisson limit needs a strictly balanced pattern".into(),
        ));
    }
    let shape = PatternShape::of_multigraph(pattern);
    let sol = solve_chi(dset, 2.0 * m as f64 / n as f64)?;
    let chi = sol.chi;
    let delta = dset.delta().eval_f64(chi);
    let mut value = 1.0 / shape.automorphisms as f64
        * (n as f64).powi(shape.vertices as i32)
        / (2.0 * m as f64).powi(shape.edges as i32)
        * chi.powi(2 * shape.edges as i32)
        / delta.powi(shape.vertices as i32);
    for &d in &shape.degrees {
        value *= dset.delta_deriv_at(d, chi);
    }
    Ok(DcLambda {
        value,
        growth_exponent: shape.vertices as i64 - shape.edges as i64,
    })
}

/// Poisson means of short cycle counts, lambda_j = rho^j / (2j) with
/// rho = (n/2m) chi^2 Delta''(chi)/Delta(chi). Indices 1 and 2 govern
/// loops and double edges; 3..=k_max are the simple-cycle laws.
#[derive(Clone, Debug)]
pub struct CycleLambdas {
    pub rho: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    /// (j, lambda_j) for j = 3..=k_max.
    pub cycles: Vec<(u32, f64)>,
}

impl CycleLambdas {
    pub fn lambda(&self, j: u32) -> f64 {
        match j {
            1 => self.lambda1,
            2 => self.lambda2,
            _ => self
                .cycles
                .iter()
                .find(|&&(jj, _)| jj == j)
                .map(|&(_, l)| l)
                .unwrap_or(0.0),
        }
    }
}

pub fn cycle_lambdas(k_max: u32, n: u64, m: u64, dset: &DegreeSet) -> Result<CycleLambdas> {
    let sol = solve_chi(dset, 2.0 * m as f64 / n as f64)?;
    let chi = sol.chi;
    let rho =
        n as f64 / (2.0 * m as f64) * chi * chi * dset.delta_deriv_at(2, chi)
            / dset.delta().eval_f64(chi);
    let lambda = |j: u32| rho.powi(j as i32) / (2.0 * j as f64);
    Ok(CycleLambdas {
        rho,
        lambda1: lambda(1),
        lambda2: lambda(2),
        cycles: (3..=k_max.max(3)).map(|j| (j, lambda(j))).collect(),
    })
}

#[derive(Clone, Copy, Debug)]
pub struct SimpleGraphEstimate {
    pub ln: f64,
    pub value: f64,
    pub rho: f64,
    /// e^(-rho/2 - rho^2/4), the loop/double-edge survival probability.
    pub correction: f64,
}

/// Estimated number of simple (n,m,D)-graphs:
/// MG/(2^m m!) * e^(-rho/2 - rho^2/4).
pub fn simple_graph_count_estimate(n: u64, m: u64, dset: &DegreeSet) -> Result<SimpleGraphEstimate> {
    let lambdas = cycle_lambdas(3, n, m, dset)?;
    let rho = lambdas.rho;
    let ln_mg = if 2 * m <= 2000 {
        let exact = mg_count(n, m, dset);
        if exact.is_zero() {
            return Err(Error::Infeasible(format!(
                "no ({n},{m},D)-multigraphs exist"
            )));
        }
        numbers::ln_bigint(&exact)
    } else {
        mg_count_ln(n, m, dset)?
    };
    let correction = (-lambdas.lambda1 - lambdas.lambda2).exp();
    let ln = ln_mg - m as f64 * std::f64::consts::LN_2 - ln_gamma(m as f64 + 1.0)
        - lambdas.lambda1
        - lambdas.lambda2;
    Ok(SimpleGraphEstimate {
        ln,
        value: ln.exp(),
        rho,
        correction,
    })
}
