//! Goodness-of-fit helpers for the validation harness.

use statrs::function::gamma::gamma_ur;

#[derive(Clone, Copy, Debug)]
pub struct ChiSquare {
    pub statistic: f64,
    pub degrees_of_freedom: f64,
    pub p_value: f64,
}

/// Pearson chi-square test of the observed cell counts against the uniform
/// distribution over all cells.
pub fn chi_square_uniform(observed: &[u64]) -> ChiSquare {
    let k = observed.len();
    assert!(k >= 2, "need at least two cells");
    let total: u64 = observed.iter().sum();
    let expected = total as f64 / k as f64;
    let statistic: f64 = observed
        .iter()
        .map(|&o| {
            let diff = o as f64 - expected;
            diff * diff / expected
        })
        .sum();
    let df = (k - 1) as f64;
    ChiSquare {
        statistic,
        degrees_of_freedom: df,
        p_value: upper_tail(df, statistic),
    }
}

fn upper_tail(df: f64, statistic: f64) -> f64 {
    if statistic <= 0.0 {
        1.0
    } else {
        gamma_ur(df / 2.0, statistic / 2.0)
    }
}

/// Chi-square against arbitrary cell probabilities (must sum to ~1).
pub fn chi_square_with_probs(observed: &[u64], probs: &[f64]) -> ChiSquare {
    assert_eq!(observed.len(), probs.len());
    let total: u64 = observed.iter().sum();
    let statistic: f64 = observed
        .iter()
        .zip(probs)
        .map(|(&o, &p)| {
            let e = total as f64 * p;
            let diff = o as f64 - e;
            diff * diff / e
        })
        .sum();
    let df = (observed.len() - 1) as f64;
    ChiSquare {
        statistic,
        degrees_of_freedom: df,
        p_value: upper_tail(df, statistic),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_counts_score_high_p() {
        let obs = vec![1000u64; 10];
        let t = chi_square_uniform(&obs);
        assert_eq!(t.statistic, 0.0);
        assert!((t.p_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn known_textbook_value() {
        // observed [28, 31, 40, 35] against uniform over 4 cells
        let t = chi_square_uniform(&[28, 31, 40, 35]);
        assert!((t.statistic - 2.417_910_447_761_194).abs() < 1e-9);
        assert!((t.p_value - 0.490_309_306_965_388_3).abs() < 1e-9);
    }

    #[test]
    fn skewed_counts_score_low_p() {
        let t = chi_square_uniform(&[1000, 10, 10, 10]);
        assert!(t.p_value < 1e-6);
        let probs = [0.97, 0.01, 0.01, 0.01];
        let t = chi_square_with_probs(&[970, 12, 8, 10], &probs);
        assert!(t.p_value > 0.1);
    }
}
