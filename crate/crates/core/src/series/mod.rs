//! Exact truncated formal power series over the variables z (vertices,
//! exponential), w (edges), u (marked-copy count) and x (half-edges).
//!
//! Coefficients are arbitrary-precision rationals and every operation is
//! exact up to the declared truncation. A truncation of `None` means the
//! series is entire in that variable (all higher coefficients genuinely
//! zero), so extraction there is always allowed; extracting past a finite
//! truncation is an error, never a silent zero.

mod marked;
mod xpoly;

pub use marked::{DegreeMarkedGF, MarkedTerm};
pub use xpoly::XPoly;

use crate::error::{Error, Result};
use crate::numbers;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    Z = 0,
    W = 1,
    U = 2,
    X = 3,
}

pub const VAR_NAMES: [char; 4] = ['z', 'w', 'u', 'x'];

pub type Exponents = [u16; 4];

#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    trunc: [Option<u16>; 4],
    coeffs: BTreeMap<Exponents, BigRational>,
}

impl TruncSeries {
    pub fn zero() -> Self {
        TruncSeries {
            trunc: [None; 4],
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), [0, 0, 0, 0])
    }

    pub fn monomial(coeff: BigRational, exps: Exponents) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exps, coeff);
        }
        TruncSeries {
            trunc: [None; 4],
            coeffs,
        }
    }

    pub fn var(v: Var) -> Self {
        let mut exps = [0u16; 4];
        exps[v as usize] = 1;
        Self::monomial(BigRational::one(), exps)
    }

    /// Impose (or tighten) a truncation order, dropping higher terms.
    pub fn with_trunc(mut self, v: Var, order: u16) -> Self {
        let slot = &mut self.trunc[v as usize];
        *slot = Some(slot.map_or(order, |t| t.min(order)));
        let t = self.trunc;
        self.coeffs.retain(|e, _| within(e, &t));
        self
    }

    pub fn trunc(&self, v: Var) -> Option<u16> {
        self.trunc[v as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigRational)> {
        self.coeffs.iter()
    }

    /// Stored coefficient, checked against the truncation: a request past a
    /// finite truncation is an error rather than a misleading zero.
    pub fn extract(&self, exps: Exponents) -> Result<BigRational> {
        for i in 0..4 {
            if let Some(t) = self.trunc[i] {
                if exps[i] > t {
                    return Err(Error::TruncationExceeded {
                        var: VAR_NAMES[i],
                        requested: exps[i] as u32,
                        trunc: t as u32,
                    });
                }
            }
        }
        Ok(self.coeffs.get(&exps).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let trunc = meet(&self.trunc, &other.trunc);
        let mut coeffs = BTreeMap::new();
        for (e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if !within(e, &trunc) {
                continue;
            }
            let entry = coeffs.entry(*e).or_insert_with(BigRational::zero);
            *entry += c;
        }
        coeffs.retain(|_, c: &mut BigRational| !c.is_zero());
        TruncSeries { trunc, coeffs }
    }

    pub fn scale(&self, factor: &BigRational) -> TruncSeries {
        if factor.is_zero() {
            return TruncSeries {
                trunc: self.trunc,
                coeffs: BTreeMap::new(),
            };
        }
        TruncSeries {
            trunc: self.trunc,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (*e, c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let trunc = meet(&self.trunc, &other.trunc);
        let mut coeffs: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &other.coeffs {
                let mut e = [0u16; 4];
                let mut ok = true;
                for i in 0..4 {
                    let sum = ea[i] as u32 + eb[i] as u32;
                    if let Some(t) = trunc[i] {
                        if sum > t as u32 {
                            ok = false;
                            break;
                        }
                    }
                    if sum > u16::MAX as u32 {
                        ok = false;
                        break;
                    }
                    e[i] = sum as u16;
                }
                if !ok {
                    continue;
                }
                let entry = coeffs.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncSeries { trunc, coeffs }
    }

    /// exp(a) = sum a^k / k! for a series with zero constant term. Every
    /// variable a touches must carry a finite truncation so the power sum
    /// terminates.
    pub fn exp(&self) -> Result<TruncSeries> {
        if self.coeffs.contains_key(&[0, 0, 0, 0]) {
            return Err(Error::SeriesContract(
                "exp needs a zero constant term".into(),
            ));
        }
        let mut degree_budget: u32 = 0;
        for i in 0..4 {
            let used = self.coeffs.keys().any(|e| e[i] > 0);
            if used {
                match self.trunc[i] {
                    Some(t) => degree_budget += t as u32,
                    None => {
                        return Err(Error::SeriesContract(format!(
                            "exp needs a finite truncation in {}",
                            VAR_NAMES[i]
                        )))
                    }
                }
            }
        }
        let mut result = TruncSeries {
            trunc: self.trunc,
            coeffs: BTreeMap::new(),
        };
        result
            .coeffs
            .insert([0, 0, 0, 0], BigRational::one());
        let mut power = result.clone(); // a^0
        let mut kfact = BigInt::one();
        for k in 1..=degree_budget.max(1) {
            power = power.mul(self);
            if power.is_zero() {
                break;
            }
            kfact *= k;
            let term = power.scale(&BigRational::new(BigInt::one(), kfact.clone()));
            result = result.add(&term);
        }
        Ok(result)
    }

    /// Substitute w <- base(w), where base has zero constant term (the
    /// edge-variable substitutions w/(1+w) and w/(1-w) are the two users).
    pub fn subst_w(&self, base: &TruncSeries) -> Result<TruncSeries> {
        if base.coeffs.keys().any(|e| e[Var::Z as usize] > 0 || e[Var::U as usize] > 0 || e[Var::X as usize] > 0)
        {
            return Err(Error::SeriesContract(
                "w-substitution base must involve w only".into(),
            ));
        }
        if base.coeffs.contains_key(&[0, 0, 0, 0]) {
            return Err(Error::SeriesContract(
                "w-substitution base needs zero constant term".into(),
            ));
        }
        let mut trunc = meet(&self.trunc, &base.trunc);
        // the result's w orders come from the base alone
        trunc[Var::W as usize] = match (self.trunc[Var::W as usize], base.trunc[Var::W as usize]) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };

        // group self by w-exponent
        let mut by_w: BTreeMap<u16, Vec<(Exponents, BigRational)>> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let mut rest = *e;
            rest[Var::W as usize] = 0;
            by_w.entry(e[Var::W as usize]).or_default().push((rest, c.clone()));
        }

        let mut result = TruncSeries {
            trunc,
            coeffs: BTreeMap::new(),
        };
        let mut base_pow = TruncSeries::one();
        for i in 0..4 {
            if let Some(t) = trunc[i] {
                base_pow = base_pow.with_trunc(var_of(i), t);
            }
        }
        let mut current_pow: u16 = 0;
        for (&wexp, terms) in &by_w {
            while current_pow < wexp {
                base_pow = base_pow.mul(base);
                current_pow += 1;
            }
            for (rest, c) in terms {
                let part = TruncSeries::monomial(c.clone(), *rest);
                result = result.add(&part.mul(&base_pow));
            }
        }
        result.trunc = trunc;
        Ok(result)
    }

    /// w <- w/(1+w), the substitution that turns "chosen edges" bookkeeping
    /// into plain edge counts. Requires a finite w truncation.
    pub fn subst_edge_var(&self) -> Result<TruncSeries> {
        let t = self.trunc[Var::W as usize].ok_or_else(|| {
            Error::SeriesContract("w/(1+w) substitution needs a finite w truncation".into())
        })?;
        Ok(self.subst_w(&geometric_w(true, t))?)
    }

    /// u <- u - 1, exact on the polynomial u-support (used by the
    /// inclusion-exclusion kernel).
    pub fn shift_u_minus_one(&self) -> TruncSeries {
        let mut coeffs: BTreeMap<Exponents, BigRational> = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let t = e[Var::U as usize] as u64;
            for s in 0..=t {
                let mut binom = BigRational::from_integer(numbers::binomial(t, s));
                if (t - s) % 2 == 1 {
                    binom = -binom;
                }
                let mut e2 = *e;
                e2[Var::U as usize] = s as u16;
                let entry = coeffs.entry(e2).or_insert_with(BigRational::zero);
                *entry += c * binom;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        TruncSeries {
            trunc: self.trunc,
            coeffs,
        }
    }

    /// Debug dump: one line per monomial, `num/den z^a w^b u^c x^d`,
    /// sorted lexicographically by exponent tuple.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.coeffs {
            out.push_str(&format!(
                "{}/{} z^{} w^{} u^{} x^{}\n",
                c.numer(),
                c.denom(),
                e[0],
                e[1],
                e[2],
                e[3]
            ));
        }
        out
    }
}

impl std::fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TruncSeries[trunc={:?}]\n{}", self.trunc, self.dump())
    }
}

fn var_of(i: usize) -> Var {
    match i {
        0 => Var::Z,
        1 => Var::W,
        2 => Var::U,
        _ => Var::X,
    }
}

fn within(e: &Exponents, trunc: &[Option<u16>; 4]) -> bool {
    (0..4).all(|i| trunc[i].map_or(true, |t| e[i] <= t))
}

fn meet(a: &[Option<u16>; 4], b: &[Option<u16>; 4]) -> [Option<u16>; 4] {
    let mut out = [None; 4];
    for i in 0..4 {
        out[i] = match (a[i], b[i]) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
    }
    out
}

/// w/(1+w) (alternating signs) or w/(1-w) (all plus), truncated at w^t.
pub fn geometric_w(alternating: bool, t: u16) -> TruncSeries {
    let mut coeffs = BTreeMap::new();
    for j in 1..=t {
        let mut c = BigRational::one();
        if alternating && j % 2 == 0 {
            c = -c;
        }
        coeffs.insert([0, j, 0, 0], c);
    }
    let mut trunc = [None; 4];
    trunc[Var::W as usize] = Some(t);
    TruncSeries { trunc, coeffs }
}

/// (1 + w)^count truncated at w^trunc_w; `count` may be astronomically
/// large, only trunc_w + 1 binomials are materialized.
pub fn binom_power(count: u64, trunc_w: u16) -> TruncSeries {
    let mut coeffs = BTreeMap::new();
    let mut c = BigInt::one();
    coeffs.insert([0, 0, 0, 0], BigRational::one());
    for j in 1..=trunc_w as u64 {
        if j > count {
            break;
        }
        c = c * (count - j + 1) / j;
        coeffs.insert(
            [0, j as u16, 0, 0],
            BigRational::from_integer(c.clone()),
        );
    }
    let mut trunc = [None; 4];
    trunc[Var::W as usize] = Some(trunc_w);
    TruncSeries { trunc, coeffs }
}

/// e^z truncated at z^trunc_z.
pub fn exp_vertices(trunc_z: u16) -> TruncSeries {
    TruncSeries::var(Var::Z)
        .with_trunc(Var::Z, trunc_z)
        .exp()
        .expect("z has zero constant term")
}

/// Convenience: a rational from an integer pair.
pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Assert a rational is integral and return the integer.
pub fn expect_integer(r: &BigRational) -> BigInt {
    assert!(
        r.denom().is_one() || r.numer().is_zero(),
        "expected an integer, got {}/{}",
        r.numer(),
        r.denom()
    );
    if r.numer().is_zero() {
        BigInt::zero()
    } else {
        r.numer().clone()
    }
}

#[allow(unused_imports)]
use num::Integer;
