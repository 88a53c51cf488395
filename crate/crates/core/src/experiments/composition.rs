use std::time::Instant;

use rug::{Integer, Rational};

use super::config::ExperimentConfig;
use super::parallel::par_samples;
use super::report::{ExperimentReport, Row};
use super::stats::{mean, sem};
use crate::error::Result;
use crate::esf::{compose_involutions, InvolutionSampler};
use crate::perm::{enumerate_cycle_types, invol, telephone};

/// The identity `Σ_σ invol(σ) = t_n²` is checked for `n` up to this.
pub const IDENTITY_MAX_N: usize = 9;

/// Largest multiplicity with its own `pmf` row.
pub const PMF_MAX: usize = 8;

/// `P(X + 2Y = j)` for independent `X ∼ Poisson(1)`, `Y ∼ Poisson(1/(2k))`.
pub fn limit_pmf(k: usize, j: usize) -> f64 {
    let lambda = 1.0 / (2 * k) as f64;
    let pois =
        |mu: f64, i: usize| (-mu + i as f64 * mu.ln() - crate::asym::ln_factorial(i as u64)).exp();
    (0..=j / 2)
        .map(|y| pois(1.0, j - 2 * y) * pois(lambda, y))
        .sum()
}

/// `Σ_types class_size · invol`, summed over all cycle types of `S_n`.
pub fn involution_pair_total(n: usize) -> Integer {
    enumerate_cycle_types(n)
        .map(|(c, size)| size * invol(&c))
        .sum()
}

/// Largest `n` at which `mean_c_exact` rows are computed by enumeration.
pub const EXACT_MEAN_MAX_N: u64 = 30;

/// Exact `E c_k`, `k = 1..=k_max`, for `τ₂∘τ₁` with independent uniform
/// involutions: `Σ_types class_size · invol · c_k / t_n²`.
pub fn exact_mean_cycle_counts(n: usize, k_max: usize) -> Vec<Rational> {
    let mut acc = vec![Integer::new(); k_max];
    for (c, size) in enumerate_cycle_types(n) {
        let w = size * invol(&c);
        for (k, a) in (1..=k_max).zip(acc.iter_mut()) {
            *a += Integer::from(&w * c.count(k) as u64);
        }
    }
    let t2 = telephone(n).square();
    acc.into_iter()
        .map(|a| Rational::from((a, t2.clone())))
        .collect()
}

/// Composes pairs of independent uniform involutions and tabulates `c_k`.
///
/// Rows per `n`: `mean_c` at `k ≤ k_max` with target `1 + 1/k` (the
/// `n → ∞` limit), `mean_c_exact` for `n ≤ EXACT_MEAN_MAX_N`, and `pmf`
/// at `(k, j)` for `j ≤ PMF_MAX` with the law of `X + 2Y_k` as target. Rows
/// `pair_total` for `n ≤ IDENTITY_MAX_N` hold the exact class sum with
/// target `t_n²`.
pub fn composition_bias_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let k_max = cfg.k_max;
    let mut report = ExperimentReport::new("compose-bias", cfg);
    for &n in &cfg.n {
        let sampler = InvolutionSampler::new(n as usize);
        let draws: Vec<Vec<usize>> = par_samples(cfg.samples, cfg.seed, |rng| {
            let a = sampler.sample(rng);
            let b = sampler.sample(rng);
            let sigma = compose_involutions(&a, &b).expect("sampler returns involutions");
            let c = sigma.cycle_counts();
            (1..=k_max).map(|k| c.get(k)).collect()
        });
        let exact = (n <= EXACT_MEAN_MAX_N).then(|| exact_mean_cycle_counts(n as usize, k_max));
        for k in 1..=k_max {
            if let Some(e) = &exact {
                report.push(Row::new("mean_c_exact", n, e[k - 1].to_f64()).at(k as f64));
            }
            let col: Vec<f64> = draws.iter().map(|d| d[k - 1] as f64).collect();
            report.push(
                Row::new("mean_c", n, mean(&col))
                    .at(k as f64)
                    .target(1.0 + 1.0 / k as f64)
                    .stderr(sem(&col)),
            );
            for j in 0..=PMF_MAX {
                let p = draws.iter().filter(|d| d[k - 1] == j).count() as f64 / draws.len() as f64;
                report.push(
                    Row::new("pmf", n, p)
                        .at2(k as f64, j as f64)
                        .target(limit_pmf(k, j)),
                );
            }
        }
    }
    for n in 1..=IDENTITY_MAX_N {
        let t = telephone(n);
        let total = involution_pair_total(n);
        report.push(
            Row::new("pair_total", n as u64, total.to_f64())
                .target(Integer::from(&t * &t).to_f64()),
        );
    }
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esf::EsfParams;

    #[test]
    fn pair_totals() {
        assert_eq!(involution_pair_total(6), 5776);
        for n in 1..=IDENTITY_MAX_N {
            assert_eq!(involution_pair_total(n), telephone(n).square());
        }
    }

    #[test]
    fn limit_pmf_sums_to_one() {
        for k in 1..=5 {
            let total: f64 = (0..60).map(|j| limit_pmf(k, j)).sum();
            assert!((total - 1.0).abs() < 1e-12);
            let m: f64 = (0..60).map(|j| j as f64 * limit_pmf(k, j)).sum();
            assert!((m - (1.0 + 1.0 / k as f64)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_means_small() {
        // S₂: the four pairs give id twice and the transposition twice
        assert_eq!(
            exact_mean_cycle_counts(2, 2),
            vec![Rational::from(1), Rational::from((1, 2))]
        );
        // S₃: invol is 4 on id, 2 on each transposition, 3 on each 3-cycle
        let e = exact_mean_cycle_counts(3, 3);
        assert_eq!(e[0], Rational::from((3 * 4 + 3 * 2, 16)));
        assert_eq!(e[2], Rational::from((2 * 3, 16)));
    }

    #[test]
    fn sampler_matches_enumeration() {
        let cfg = ExperimentConfig::new(vec![20], EsfParams::ratio(1, 1).unwrap(), 20_000);
        let r = composition_bias_experiment(&cfg).unwrap();
        for k in 1..=5 {
            let row = r.get_at("mean_c", 20, k as f64, None).unwrap();
            let exact = r.get_at("mean_c_exact", 20, k as f64, None).unwrap().value;
            assert!(
                (row.value - exact).abs() < 4.0 * row.stderr.unwrap(),
                "k = {k}"
            );
        }
    }
}
