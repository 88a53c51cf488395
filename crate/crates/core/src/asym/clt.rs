use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Centering and scale for `log B` and `log invol` under `ESF(θ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalizers {
    /// `μ_n = Σ_{k≤n} θ log k / k`.
    pub mu_n: f64,
    /// `σ_n = √(Σ_{k≤n} θ log²k / k)`.
    pub sigma_n: f64,
}

impl Normalizers {
    pub fn standardize(&self, x: f64) -> f64 {
        (x - self.mu_n) / self.sigma_n
    }
}

/// Exact partial sums; compare [`asymptotic_normalizers`].
pub fn normalizers(n: u64, theta: f64) -> Result<Normalizers> {
    if n < 2 {
        return Err(Error::domain("σ_n vanishes for n < 2"));
    }
    let (mut mu, mut var) = (0.0, 0.0);
    for k in (2..=n).rev() {
        let l = (k as f64).ln();
        mu += l / k as f64;
        var += l * l / k as f64;
    }
    Ok(Normalizers {
        mu_n: theta * mu,
        sigma_n: (theta * var).sqrt(),
    })
}

/// `μ ≈ (θ/2) log²n`, `σ ≈ √((θ/3) log³n)`.
pub fn asymptotic_normalizers(n: u64, theta: f64) -> Result<Normalizers> {
    if n < 2 {
        return Err(Error::domain("σ_n vanishes for n < 2"));
    }
    let l = (n as f64).ln();
    Ok(Normalizers {
        mu_n: theta / 2.0 * l * l,
        sigma_n: (theta / 3.0 * l * l * l).sqrt(),
    })
}

/// First-order correction to the law of standardized `log invol` at θ = 1:
/// `3^{3/2}/(24√(2π)) · (1−x²) e^{−x²/2} / √(log n)`.
pub fn edgeworth_term(x: f64, n: u64) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain("need n ≥ 3"));
    }
    let c = 3f64.powf(1.5) / (24.0 * (2.0 * std::f64::consts::PI).sqrt());
    Ok(c * (1.0 - x * x) * (-x * x / 2.0).exp() / (n as f64).ln().sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_at_ten() {
        let direct: f64 = (1..=10).map(|k| (k as f64).ln() / k as f64).sum();
        let got = normalizers(10, 1.0).unwrap().mu_n;
        assert!((got - direct).abs() < 1e-15);
        assert!((got - 2.692_177_367_782_756).abs() < 1e-12);
    }

    #[test]
    fn sigma_approaches_asymptotic() {
        let n = 1_000_000;
        let exact = normalizers(n, 1.0).unwrap().sigma_n;
        let asym = asymptotic_normalizers(n, 1.0).unwrap().sigma_n;
        let ratio = (exact / asym).powi(2);
        assert!((0.9..=1.1).contains(&ratio), "{ratio}");
    }

    #[test]
    fn edgeworth_shape() {
        assert_eq!(edgeworth_term(1.0, 100).unwrap(), 0.0);
        assert_eq!(edgeworth_term(-1.0, 100).unwrap(), 0.0);
        let n = 9f64.exp().round() as u64;
        let at0 = edgeworth_term(0.0, n).unwrap();
        let c = 3f64.powf(1.5) / (24.0 * (2.0 * std::f64::consts::PI).sqrt());
        assert!((at0 - c / (n as f64).ln().sqrt()).abs() < 1e-15);
        assert!((c - 0.086_373_537_367_833_87).abs() < 1e-15);
        for x in [0.3, 1.7, 2.5] {
            assert_eq!(
                edgeworth_term(x, 500).unwrap(),
                edgeworth_term(-x, 500).unwrap()
            );
        }
    }
}
