use std::time::Instant;

use super::config::ExperimentConfig;
use super::parallel::par_samples;
use super::path::log_invol_prefix;
use super::report::{ExperimentReport, Row};
use super::stats::{covariance, mean, sem, variance};
use crate::asym::normalizers;
use crate::error::Result;
use crate::esf::{feller_ones, SpacingSample};
use crate::perm::ln_invol;

struct PathDraw {
    sup: f64,
    at_cov: Vec<f64>,
    ln_invol: f64,
}

/// Paths `W_n(t)` against the coupled `B_n(t)` built from `Z₀`.
///
/// The sup in `sup_distance` is taken over the `t_points` grid only, so it
/// underestimates the sup over `[0, 1]`. Rows per `n`: `sup_distance` (mean
/// over samples), `cov` at each `(s, t)` pair of `cov_t` with target
/// `min(s,t)³`, and `w1_mean`/`w1_var` of `log invol` standardized by the
/// exact sums μ_n, σ_n.
pub fn functional_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let theta = cfg.theta.theta();
    let hf = cfg.horizon_factor;
    let top = hf * cfg.max_n() as usize;
    let grid = cfg.t_grid();

    let draws: Vec<Vec<PathDraw>> = par_samples(cfg.samples, cfg.seed, |rng| {
        let ones = feller_ones(theta, top, rng);
        cfg.n
            .iter()
            .map(|&n| {
                let n = n as usize;
                let s =
                    SpacingSample::from_ones(n, hf * n, ones.clone()).expect("valid Feller run");
                PathDraw {
                    sup: log_invol_prefix(&s, &grid, theta).sup_distance(),
                    at_cov: log_invol_prefix(&s, &cfg.cov_t, theta).w,
                    ln_invol: ln_invol(s.c(), n),
                }
            })
            .collect()
    });

    let mut report = ExperimentReport::new("functional", cfg);
    for (i, &n) in cfg.n.iter().enumerate() {
        let sups: Vec<f64> = draws.iter().map(|d| d[i].sup).collect();
        report.push(Row::new("sup_distance", n, mean(&sups)).stderr(sem(&sups)));

        let cols: Vec<Vec<f64>> = (0..cfg.cov_t.len())
            .map(|a| draws.iter().map(|d| d[i].at_cov[a]).collect())
            .collect();
        let count = draws.len() as f64;
        for (a, &s) in cfg.cov_t.iter().enumerate() {
            for (b, &t) in cfg.cov_t.iter().enumerate() {
                let c = covariance(&cols[a], &cols[b]);
                let se = ((variance(&cols[a]) * variance(&cols[b]) + c * c) / count).sqrt();
                report.push(
                    Row::new("cov", n, c)
                        .at2(s, t)
                        .target(s.min(t).powi(3))
                        .stderr(se),
                );
            }
        }

        let norm = normalizers(n, theta)?;
        let w1: Vec<f64> = draws
            .iter()
            .map(|d| norm.standardize(d[i].ln_invol))
            .collect();
        let v = variance(&w1);
        report.push(
            Row::new("w1_mean", n, mean(&w1))
                .target(0.0)
                .stderr(sem(&w1)),
        );
        report.push(
            Row::new("w1_var", n, v)
                .target(1.0)
                .stderr(v * (2.0 / count).sqrt()),
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
    fn covariance_grid_is_symmetric() {
        let mut cfg = ExperimentConfig::new(vec![2000], EsfParams::ratio(1, 1).unwrap(), 600);
        cfg.t_points = 11;
        let r = functional_experiment(&cfg).unwrap();
        let c = |s, t| r.get_at("cov", 2000, s, Some(t)).unwrap().value;
        assert_eq!(c(0.2, 0.8), c(0.8, 0.2));
        assert!(c(1.0, 1.0) > c(0.2, 0.2));
        assert!(r.get("sup_distance", 2000).unwrap().value > 0.0);
    }
}
