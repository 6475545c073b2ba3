//! Exact big-integer combinatorics and log-space helpers used by the
//! coefficient-extraction and asymptotic paths.

pub use num::bigint::BigInt;
pub use num::rational::BigRational;

use num::{One, Signed, ToPrimitive, Zero};
use statrs::function::gamma::ln_gamma;

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= i;
    }
    acc
}

/// Falling factorial n (n-1) ... (n-k+1); zero when k > n.
pub fn falling(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
    }
    acc
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Natural log of a positive big integer, stable far beyond f64 range.
pub fn ln_bigint(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln of non-positive integer");
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("small bigint fits f64").ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_f64().expect("53-bit mantissa fits f64");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Rational -> f64 that survives numerators/denominators outside f64 range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let numer = r.numer();
    let denom = r.denom();
    if let (Some(n), Some(d)) = (numer.to_f64(), denom.to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    sign * (ln_bigint(&numer.abs()) - ln_bigint(denom)).exp()
}

/// |exact - approx| / exact computed in log space so huge exact values work.
pub fn relative_error_ln(exact: &BigInt, approx_ln: f64) -> f64 {
    assert!(exact.is_positive());
    let ratio = (approx_ln - ln_bigint(exact)).exp();
    (1.0 - ratio).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(45, 2), BigInt::from(990));
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(3, 7), BigInt::zero());
        assert_eq!(falling(8, 3), BigInt::from(336));
        assert_eq!(falling(2, 3), BigInt::zero());
    }

    #[test]
    fn ln_bigint_matches_direct() {
        let x = factorial(30);
        let direct = x.to_f64().unwrap().ln();
        assert!((ln_bigint(&x) - direct).abs() < 1e-10);
        // far beyond f64: ln(1000!) via Stirling cross-check
        let big = factorial(1000);
        assert!((ln_bigint(&big) - ln_factorial(1000)).abs() < 1e-6);
    }

    #[test]
    fn ratio_conversion() {
        let r = BigRational::new(BigInt::from(1), BigInt::from(3));
        assert!((ratio_to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
        let huge = BigRational::new(factorial(600), factorial(599));
        assert!((ratio_to_f64(&huge) - 600.0).abs() < 1e-6);
        let neg = BigRational::from_i64(-4).unwrap();
        assert_eq!(ratio_to_f64(&neg), -4.0);
    }
}
