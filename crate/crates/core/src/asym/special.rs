use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const ZETA2: f64 = PI * PI / 6.0;

/// `Li_s(z) = Σ zⁿ/nˢ` for integer `s ≥ 1` and `0 ≤ z ≤ 1`.
///
/// `s = 1` is `−log(1−z)`; `s = 2` uses the series up to `z = 1/2` and the
/// reflection `Li₂(z) = π²/6 − log z·log(1−z) − Li₂(1−z)` above it; other
/// orders sum the series with the geometric tail bound `z^{N+1}/(1−z)`.
pub fn polylog(s: u32, z: f64) -> Result<f64> {
    if s == 0 || !(0.0..=1.0).contains(&z) {
        return Err(Error::domain(format!(
            "Li_{s}({z}) is outside s ≥ 1, 0 ≤ z ≤ 1"
        )));
    }
    match (s, z) {
        (_, 0.0) => Ok(0.0),
        (1, 1.0) => Err(Error::domain("Li₁(1) diverges")),
        (1, _) => Ok(-(-z).ln_1p()),
        (2, 1.0) => Ok(ZETA2),
        (2, _) if z > 0.5 => Ok(ZETA2 - z.ln() * (-z).ln_1p() - series(2, 1.0 - z)),
        (_, 1.0) => Ok(zeta_direct(s)),
        _ => Ok(series(s, z)),
    }
}

pub fn li2(z: f64) -> Result<f64> {
    polylog(2, z)
}

fn series(s: u32, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut zn = 1.0;
    for n in 1..100_000u32 {
        zn *= z;
        let term = zn / f64::from(n).powi(s as i32);
        sum += term;
        if zn * z / (1.0 - z) < 1e-18 * sum {
            break;
        }
    }
    sum
}

/// `ζ(s)` for `s ≥ 3` by direct summation plus the integral tail.
fn zeta_direct(s: u32) -> f64 {
    let n = 1000u32;
    let head: f64 = (1..=n).rev().map(|k| f64::from(k).powi(-(s as i32))).sum();
    head + f64::from(n).powi(1 - s as i32) / f64::from(s - 1) - 0.5 * f64::from(n).powi(-(s as i32))
}

pub fn gamma(x: f64) -> f64 {
    libm::tgamma(x)
}

pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

pub fn ln_factorial(n: u64) -> f64 {
    ln_gamma(n as f64 + 1.0)
}

/// Robbins' upper bound `log n! < ½log 2π + (n+½) log n − n + 1/(12n)`.
pub fn ln_factorial_robbins(n: u64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let x = n as f64;
    0.5 * (2.0 * PI).ln() + (x + 0.5) * x.ln() - x + 1.0 / (12.0 * x)
}

/// Standard normal distribution function.
pub fn phi(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

pub fn harmonic(n: u64) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    #[test]
    fn li2_half() {
        let want = PI * PI / 12.0 - LN_2 * LN_2 / 2.0;
        assert!((li2(0.5).unwrap() - want).abs() < 1e-15);
        // plain series at z = 1/2 converges fast enough to cross-check
        assert!((series(2, 0.5) - want).abs() < 1e-15);
    }

    #[test]
    fn li2_reflection_identity() {
        for i in 1..100 {
            let z = i as f64 / 100.0;
            let lhs = li2(z).unwrap() + li2(1.0 - z).unwrap();
            let rhs = ZETA2 - z.ln() * (1.0 - z).ln();
            assert!((lhs - rhs).abs() < 1e-14, "z = {z}");
        }
    }

    #[test]
    fn li2_against_slow_series() {
        for z in [0.6f64, 0.75, 0.9, 0.99] {
            let slow: f64 = (1..2_000_000).map(|n| z.powi(n) / (n as f64).powi(2)).sum();
            assert!((li2(z).unwrap() - slow).abs() < 1e-12, "z = {z}");
        }
        assert!((li2(1.0).unwrap() - ZETA2).abs() < 1e-16);
    }

    #[test]
    fn other_orders() {
        assert!((polylog(1, 0.5).unwrap() - LN_2).abs() < 1e-16);
        assert!((polylog(3, 1.0).unwrap() - 1.202_056_903_159_594_3).abs() < 1e-12);
        assert!(polylog(1, 1.0).is_err());
        assert!(polylog(2, 1.5).is_err());
    }

    #[test]
    fn gamma_and_phi() {
        assert!((gamma(1.0) - 1.0).abs() < 1e-15);
        assert!((gamma(0.5) - PI.sqrt()).abs() < 1e-14);
        assert_eq!(phi(0.0), 0.5);
        assert!((phi(1.959_963_984_540_054) - 0.975).abs() < 1e-15);
        assert!((phi(-1.0) + phi(1.0) - 1.0).abs() < 1e-16);
    }

    #[test]
    fn robbins_is_an_upper_bound() {
        for n in 1..200 {
            let exact = ln_factorial(n);
            let bound = ln_factorial_robbins(n);
            assert!(bound > exact);
            assert!(bound - exact < 1.0 / (12.0 * n as f64));
        }
    }
}
