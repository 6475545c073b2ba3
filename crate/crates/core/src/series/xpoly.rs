//! Dense univariate polynomials in the half-edge variable x.
//!
//! The degree-set polynomial and its powers are dense in x, unlike the
//! graph generating functions, so they get a dense representation with
//! binary exponentiation under truncation.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

/// coeffs[i] is the coefficient of x^i; trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XPoly {
    coeffs: Vec<BigRational>,
}

impl XPoly {
    pub fn zero() -> Self {
        XPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        XPoly {
            coeffs: vec![BigRational::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = XPoly { coeffs };
        p.trim();
        p
    }

    /// Monomial c x^d.
    pub fn monomial(c: BigRational, d: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[d] = c;
        XPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn add(&self, other: &XPoly) -> XPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        XPoly::from_coeffs(out)
    }

    pub fn mul_trunc(&self, other: &XPoly, max_deg: usize) -> XPoly {
        if self.is_zero() || other.is_zero() {
            return XPoly::zero();
        }
        let out_len = (self.coeffs.len() + other.coeffs.len() - 1).min(max_deg + 1);
        let mut out = vec![BigRational::zero(); out_len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > max_deg || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > max_deg {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out[i + j] += a * b;
            }
        }
        XPoly::from_coeffs(out)
    }

    /// Binary exponentiation, truncated at x^max_deg throughout.
    pub fn pow_trunc(&self, mut exp: u64, max_deg: usize) -> XPoly {
        let mut base = self.clone();
        let mut acc = XPoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_trunc(&base, max_deg);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_trunc(&base, max_deg);
            }
        }
        acc
    }

    pub fn derivative(&self) -> XPoly {
        if self.coeffs.len() <= 1 {
            return XPoly::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        XPoly::from_coeffs(out)
    }

    pub fn nth_derivative(&self, order: u32) -> XPoly {
        let mut p = self.clone();
        for _ in 0..order {
            p = p.derivative();
            if p.is_zero() {
                break;
            }
        }
        p
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::numbers::ratio_to_f64(c);
        }
        acc
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }
}
