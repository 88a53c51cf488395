use std::f64::consts::PI;
use std::fmt;

use rug::Float;
use serde::{Deserialize, Serialize};

use super::special::{li2, ln_gamma};
use crate::error::{Error, Result};

/// A closed-form leading term, kept as its natural log so that values such
/// as `E_n invol²` at `n = 10⁴` never overflow.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticEstimate {
    pub ln_value: f64,
    /// Relative error is `O(n^{num/den})`.
    pub claimed_error_exponent: ErrorExponent,
    pub regime: Regime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorExponent {
    pub num: i32,
    pub den: u32,
}

impl ErrorExponent {
    pub const NEG_HALF: Self = Self { num: -1, den: 2 };
    pub const NEG_THIRD: Self = Self { num: -1, den: 3 };

    pub fn to_f64(self) -> f64 {
        f64::from(self.num) / f64::from(self.den)
    }
}

impl fmt::Display for ErrorExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Growth shape of the estimate; the second moment changes shape at θ = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `e^{2√(αn)} n^{…}`.
    Wright,
    /// θ < 1: `exp(3A n^{2/3}/(2A)^{2/3} + …) n^{1/3−θ}`.
    Subcritical,
    /// θ = 1: as subcritical with `A = π²/6`, times `n^{−3/4}`.
    Critical,
    /// θ > 1: `θⁿ e^{2√n} n^{1/2−θ}`.
    Supercritical,
}

impl Regime {
    /// Human-readable growth law, for reports.
    pub fn growth(self) -> &'static str {
        match self {
            Regime::Wright => "exp(2*sqrt(alpha*n)) * n^(-beta/2-3/4)",
            Regime::Subcritical => {
                "exp(3*Li2(theta)*(n/(2*Li2(theta)))^(2/3) + O(n^(1/3))) * n^(1/3-theta)"
            }
            Regime::Critical => "exp((3*pi*n)^(2/3)/2 + O(n^(1/3))) * n^(-3/4)",
            Regime::Supercritical => "theta^n * exp(2*sqrt(n)) * n^(1/2-theta)",
        }
    }
}

impl AsymptoticEstimate {
    pub fn value(&self, prec: u32) -> Float {
        Float::with_val(prec, self.ln_value).exp()
    }

    /// `exact / estimate`, formed in log space.
    pub fn ratio(&self, exact: &Float) -> f64 {
        (Float::with_val(exact.prec(), exact.ln_ref()).to_f64() - self.ln_value).exp()
    }

    /// `log(exact) / log(estimate)`.
    pub fn log_ratio(&self, exact: &Float) -> f64 {
        Float::with_val(exact.prec(), exact.ln_ref()).to_f64() / self.ln_value
    }
}

fn check(n: u64, theta: f64) -> Result<()> {
    if n == 0 || !(theta.is_finite() && theta > 0.0) {
        return Err(Error::domain(format!(
            "need n ≥ 1 and θ > 0, got n = {n}, θ = {theta}"
        )));
    }
    Ok(())
}

/// `E_n invol ≈ θ^{(1−θ²)/4} Γ(θ) / (2^{θ²/2+1} e^{θ/2} √π) · e^{2√(θn)} n^{θ²/4−θ+1/4}`.
pub fn mean_asym(n: u64, theta: f64) -> Result<AsymptoticEstimate> {
    check(n, theta)?;
    let t2 = theta * theta;
    let ln_n = (n as f64).ln();
    let ln_const = (1.0 - t2) / 4.0 * theta.ln() + ln_gamma(theta)
        - (t2 / 2.0 + 1.0) * std::f64::consts::LN_2
        - theta / 2.0
        - 0.5 * PI.ln();
    Ok(AsymptoticEstimate {
        ln_value: ln_const + 2.0 * (theta * n as f64).sqrt() + (t2 / 4.0 - theta + 0.25) * ln_n,
        claimed_error_exponent: ErrorExponent::NEG_HALF,
        regime: Regime::Wright,
    })
}

/// Leading term of `[zⁿ] (1−z)^β φ(z) exp(α/(1−z))`:
/// `n^{−β/2−3/4} e^{2√(αn)}/(2√π) · φ(1) e^{α/2} α^{β/2+1/4}`.
pub fn wright_leading(n: u64, alpha: f64, beta: f64, phi_at_1: f64) -> Result<AsymptoticEstimate> {
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("α must be positive, got {alpha}")));
    }
    if !(phi_at_1 > 0.0) {
        return Err(Error::domain(format!(
            "φ(1) must be positive, got {phi_at_1}"
        )));
    }
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    let ln_n = (n as f64).ln();
    Ok(AsymptoticEstimate {
        ln_value: -(beta / 2.0 + 0.75) * ln_n + 2.0 * (alpha * n as f64).sqrt()
            - (2.0 * PI.sqrt()).ln()
            + phi_at_1.ln()
            + alpha / 2.0
            + (beta / 2.0 + 0.25) * alpha.ln(),
        claimed_error_exponent: ErrorExponent::NEG_HALF,
        regime: Regime::Wright,
    })
}

/// `log K_θ` for θ > 1, `K_θ = Π_{k≥2} (1−θ^{2−2k})^{−1/2} exp(k/(θ^{k−1}−1))`.
///
/// Log-terms decay like `k θ^{1−k}`, with ratio at most `r = (1+1/K)/θ` past
/// index `K`. The product stops at the first term below `10⁻³⁰`, leaving a
/// tail of at most that term over `1 − r`.
pub fn ln_k_theta(theta: f64) -> Result<f64> {
    if !(theta > 1.0) {
        return Err(Error::domain(format!("K_θ needs θ > 1, got {theta}")));
    }
    let mut sum = 0.0;
    for k in 2..10_000_000u32 {
        let k = f64::from(k);
        let q = (-(k - 1.0) * theta.ln()).exp(); // θ^{1−k}
        let term = -0.5 * (-q * q).ln_1p() + k * q / (1.0 - q);
        sum += term;
        if term < 1e-30 {
            return Ok(sum);
        }
    }
    Err(Error::domain(format!(
        "K_θ product did not converge for θ = {theta}"
    )))
}

/// Second-moment constants for θ ≤ 1: `log G(e^{−u}) ≈ A/u² + A'/u + κ log u + c₀`.
fn saddle_constants(theta: f64) -> Result<(f64, f64, f64, f64)> {
    if theta < 1.0 {
        let a = li2(theta)?;
        let a1 = li2(theta * theta)? / 4.0;
        let c0 = 0.25 * (-theta * theta).ln_1p() - theta / (12.0 * (1.0 - theta));
        Ok((a, a1, 0.0, c0))
    } else {
        let a = PI * PI / 6.0;
        let a1 = (PI * PI - 12.0) / 24.0;
        Ok((a, a1, 0.25, -0.25 * PI.ln() + 1.0 / 24.0))
    }
}

/// `log [zⁿ]G` for θ ≤ 1 by the saddle point of `exp(A/u² + A'/u)·u^κ·e^{c₀}·e^{nu}`:
/// with `v = (2A/n)^{1/3}`, `[zⁿ]G ≈ e^{c₀} v^κ · v²/√(12πA) · exp(3A/v² + A'/v − A'²/(12A))`.
fn ln_g_coeff_saddle(n: u64, theta: f64) -> Result<f64> {
    let (a, a1, kappa, c0) = saddle_constants(theta)?;
    let v = (2.0 * a / n as f64).cbrt();
    Ok(
        c0 + kappa * v.ln() + 2.0 * v.ln() - 0.5 * (12.0 * PI * a).ln()
            + 3.0 * a / (v * v)
            + a1 / v
            - a1 * a1 / (12.0 * a),
    )
}

/// `E_n invol²` under `ESF(θ)`, dispatching on the three regimes.
///
/// θ > 1 is the Wright-type formula with `K_θ`. For θ ≤ 1 the saddle point
/// is taken from the singular expansion of `log G` directly; `n!/θ⁽ⁿ⁾` is
/// replaced by `Γ(θ) n^{1−θ}`.
pub fn second_moment_asym(n: u64, theta: f64) -> Result<AsymptoticEstimate> {
    check(n, theta)?;
    let ln_n = (n as f64).ln();
    if theta > 1.0 {
        let ln_value = ln_k_theta(theta)? + ln_gamma(theta) - (2.0 * (2.0 * PI).sqrt()).ln()
            + n as f64 * theta.ln()
            + 2.0 * (n as f64).sqrt()
            - 0.5
            + (0.5 - theta) * ln_n;
        return Ok(AsymptoticEstimate {
            ln_value,
            claimed_error_exponent: ErrorExponent::NEG_HALF,
            regime: Regime::Supercritical,
        });
    }
    let ln_value = ln_g_coeff_saddle(n, theta)? + ln_gamma(theta) + (1.0 - theta) * ln_n;
    Ok(AsymptoticEstimate {
        ln_value,
        claimed_error_exponent: ErrorExponent::NEG_THIRD,
        regime: if theta < 1.0 {
            Regime::Subcritical
        } else {
            Regime::Critical
        },
    })
}

/// The θ ≤ 1 second-moment formulas exactly as usually stated in closed form
/// (`n^{1/3}` coefficient `Li₂(θ²)/(2Li₂θ)^{1/3}`, and for θ = 1 the prefactor
/// `2^{−1/4}π^{−1/12}(3n)^{−7/12}`). Kept only so reports can show how far
/// they sit from the exact coefficients; use [`second_moment_asym`].
pub fn second_moment_asym_uncorrected(n: u64, theta: f64) -> Result<AsymptoticEstimate> {
    check(n, theta)?;
    if theta > 1.0 {
        return second_moment_asym(n, theta);
    }
    let nf = n as f64;
    let ln_value = if theta < 1.0 {
        let l = li2(theta)?;
        let l2 = li2(theta * theta)?;
        0.25 * (1.0 - theta * theta).ln()
            + (2.0 * l).ln() / 6.0
            + ln_gamma(theta)
            + (1.0 / 3.0 - theta) * nf.ln()
            - 0.5 * (6.0 * PI).ln()
            + 3.0 * l * nf.powf(2.0 / 3.0) / (2.0 * l).powf(2.0 / 3.0)
            + l2 * nf.cbrt() / (2.0 * l).cbrt()
            - theta / (12.0 * (1.0 - theta))
    } else {
        -(0.25 * 2f64.ln() + PI.ln() / 12.0 + 7.0 / 12.0 * (3.0 * nf).ln())
            + 0.5 * (3.0 * PI * nf).powf(2.0 / 3.0)
            - (PI * PI - 4.0) / 8.0 * (3.0 * nf / (PI * PI)).cbrt()
            + 7.0 / 24.0
            - PI * PI / 144.0
    };
    Ok(AsymptoticEstimate {
        ln_value,
        claimed_error_exponent: ErrorExponent::NEG_THIRD,
        regime: if theta < 1.0 {
            Regime::Subcritical
        } else {
            Regime::Critical
        },
    })
}

/// `E_n(invol | K = m) ≈ n^m / (m! log^{m−1} n)`.
pub fn conditional_mean_asym(n: u64, m: u32) -> Result<f64> {
    if n < 3 || m == 0 {
        return Err(Error::domain(format!(
            "need n ≥ 3 and m ≥ 1, got n = {n}, m = {m}"
        )));
    }
    let nf = n as f64;
    let ln =
        f64::from(m) * nf.ln() - ln_gamma(f64::from(m) + 1.0) - f64::from(m - 1) * nf.ln().ln();
    Ok(ln.exp())
}
