use serde::{Deserialize, Serialize};

use super::special::{harmonic, ln_factorial, ln_factorial_robbins};
use crate::error::{Error, Result};

/// `s_n = √(2Σ_{j<n} H_j/(j+1) − H_n(H_n−1))`, the standard deviation of the
/// number of cycles of a uniform permutation.
pub fn cycle_count_sd(n: u64) -> f64 {
    let mut h = 0.0;
    let mut acc = 0.0;
    for j in 1..n {
        h += 1.0 / j as f64;
        acc += h / (j + 1) as f64;
    }
    let hn = h + 1.0 / n as f64;
    (2.0 * acc - hn * (hn - 1.0)).max(0.0).sqrt()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewBound {
    /// `log((ξ₂!)^{ξ₁−1} ⌈H_n + ξ₁s_n⌉! e^{ξ₁²H_{ξ₂}/2})`.
    pub ln_bound: f64,
    /// Lower bound on the fraction of `S_n` below the bound.
    pub prob_guarantee: f64,
}

/// The typical-value bound for `invol` on `S_n` with parameters `ξ₁, ξ₂`.
///
/// Preconditions `20 ≤ ξ₁ ≤ n`, `ξ₂ ≤ H_n + ξ₁s_n` and `ξ₁T_{ξ₂} < n` are
/// all checked and every failure is reported.
pub fn skew_bound(n: u64, xi1: u64, xi2: u64) -> Result<SkewBound> {
    let hn = harmonic(n);
    let sn = cycle_count_sd(n);
    let mut bad = Vec::new();
    if xi1 < 20 {
        bad.push(format!("ξ₁ = {xi1} < 20"));
    }
    if xi1 > n {
        bad.push(format!("ξ₁ = {xi1} > n = {n}"));
    }
    if xi2 as f64 > hn + xi1 as f64 * sn {
        bad.push(format!(
            "ξ₂ = {xi2} > H_n + ξ₁s_n = {:.4}",
            hn + xi1 as f64 * sn
        ));
    }
    let triangular = xi2 * (xi2 + 1) / 2;
    if xi1.saturating_mul(triangular) >= n {
        bad.push(format!(
            "ξ₁T_ξ₂ = {} ≥ n = {n}",
            xi1.saturating_mul(triangular)
        ));
    }
    if !bad.is_empty() {
        return Err(Error::Precondition(bad));
    }
    let xi3 = (hn + xi1 as f64 * sn).ceil() as u64;
    let x1 = xi1 as f64;
    let ln_bound =
        (x1 - 1.0) * ln_factorial(xi2) + ln_factorial(xi3) + 0.5 * x1 * x1 * harmonic(xi2);
    let prob_guarantee =
        2.0 - 1.0 / (x1 * x1) - (15.0 / (ln_factorial(xi1 + 1).exp()) + 3.0 / xi2 as f64).exp();
    Ok(SkewBound {
        ln_bound,
        prob_guarantee,
    })
}

/// The `ξ₁ = ξ₂ = ξ` bound in closed form:
/// `log((2π)^{ξ/2} ξ^{3ξ²/2} e^{ξ²/2+ξ} X^{X+1/2})`, `X = log n + ξ√log n + 2`.
pub fn closed_form_ln_bound(n: u64, xi: u64) -> Result<f64> {
    if !((xi as f64) < (2.0 * n as f64).cbrt()) || xi == 0 {
        return Err(Error::Precondition(vec![format!(
            "need 1 ≤ ξ < (2n)^(1/3), got ξ = {xi}"
        )]));
    }
    let x = xi as f64;
    let ln_n = (n as f64).ln();
    let big_x = ln_n + x * ln_n.sqrt() + 2.0;
    Ok(0.5 * x * (2.0 * std::f64::consts::PI).ln()
        + 1.5 * x * x * x.ln()
        + 0.5 * x * x
        + x
        + (big_x + 0.5) * big_x.ln())
}

/// The `ξ₁ = ξ₂ = ξ` bound with Robbins' factorial bound, `H_n < log n + 1`
/// and `s_n < √log n` applied, before any further simplification. The
/// closed form of [`closed_form_ln_bound`] should dominate it.
pub fn skew_bound_robbins(n: u64, xi: u64) -> f64 {
    let x = xi as f64;
    let ln_n = (n as f64).ln();
    let xi3 = (ln_n + 1.0 + x * ln_n.sqrt()).ceil() as u64;
    (x - 1.0) * ln_factorial_robbins(xi) + ln_factorial_robbins(xi3) + 0.5 * x * x * (x.ln() + 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sd_matches_variance_of_cycle_count() {
        // Var K = H_n − H_n^{(2)} for uniform permutations.
        for n in [1u64, 2, 10, 1000] {
            let h1 = harmonic(n);
            let h2: f64 = (1..=n).map(|k| 1.0 / (k * k) as f64).sum();
            assert!((cycle_count_sd(n).powi(2) - (h1 - h2)).abs() < 1e-9);
        }
    }

    #[test]
    fn guarantee_at_twenty() {
        let b = skew_bound(100_000, 20, 20).unwrap();
        assert!(b.prob_guarantee > 0.8);
        let fact21 = 51_090_942_171_709_440_000f64;
        let want = 2.0 - 1.0 / 400.0 - (15.0 / fact21 + 0.15).exp();
        assert!((b.prob_guarantee - want).abs() < 1e-12);
        assert!((b.prob_guarantee - 0.8357).abs() < 1e-4);
    }

    #[test]
    fn preconditions_reported_individually() {
        match skew_bound(100, 5, 30) {
            Err(Error::Precondition(v)) => assert_eq!(v.len(), 3),
            other => panic!("expected precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn closed_form_dominates_robbins_form() {
        for n in [10_000u64, 100_000, 1_000_000, 100_000_000] {
            for xi in 2..((2.0 * n as f64).cbrt() as u64) {
                let c = closed_form_ln_bound(n, xi).unwrap();
                assert!(c >= skew_bound_robbins(n, xi), "n = {n}, ξ = {xi}");
            }
        }
    }
}
