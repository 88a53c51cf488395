use std::time::Instant;

use super::config::ExperimentConfig;
use super::parallel::par_samples;
use super::report::{ExperimentReport, Row};
use super::stats::{ecdf, ks_statistic, mean, sem, variance};
use crate::asym::{asymptotic_normalizers, edgeworth_term, normalizers, phi};
use crate::error::Result;
use crate::esf::{feller_ones, SpacingSample};
use crate::perm::ln_invol;

/// Samples `log invol(C⁽ⁿ⁾)` at every `n` of the grid and compares its
/// standardized law with Φ.
///
/// All `n` share one Bernoulli run per sample. Rows per `n`:
/// `ks` (standardized by the exact sums μ_n, σ_n), `ks_asymptotic` (by
/// `(θ/2)log²n`, `√((θ/3)log³n)`), `mean`/`var` of the exactly standardized
/// values, and at θ = 1 `ks_edgeworth` against Φ plus the Edgeworth term,
/// `deviation` rows `P̂(≤x) − Φ(x)` on `x_grid` with the term as target, and
/// `edgeworth_sign_agreement`, the fraction of grid points where the
/// deviation has the sign of `1 − x²`.
pub fn clt_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let theta = cfg.theta.theta();
    let max_n = cfg.max_n() as usize;
    let ns: Vec<usize> = cfg.n.iter().map(|&n| n as usize).collect();

    let draws = par_samples(cfg.samples, cfg.seed, |rng| {
        let ones = feller_ones(theta, max_n, rng);
        ns.iter()
            .map(|&n| {
                let s = SpacingSample::from_ones(n, n, ones.clone()).expect("valid Feller run");
                ln_invol(s.c(), n)
            })
            .collect::<Vec<f64>>()
    });

    let mut report = ExperimentReport::new("clt", cfg);
    let edgeworth = cfg.theta.theta_exact().is_ok_and(|t| *t == 1);
    for (i, &n) in cfg.n.iter().enumerate() {
        let raw: Vec<f64> = draws.iter().map(|d| d[i]).collect();
        let exact = normalizers(n, theta)?;
        let asym = asymptotic_normalizers(n, theta)?;
        let x_exact: Vec<f64> = raw.iter().map(|&v| exact.standardize(v)).collect();
        let x_asym: Vec<f64> = raw.iter().map(|&v| asym.standardize(v)).collect();

        report.push(Row::new("ks", n, ks_statistic(&x_exact, phi)));
        report.push(Row::new("ks_asymptotic", n, ks_statistic(&x_asym, phi)));
        let var = variance(&x_exact);
        report.push(
            Row::new("mean", n, mean(&x_exact))
                .target(0.0)
                .stderr(sem(&x_exact)),
        );
        report.push(
            Row::new("var", n, var)
                .target(1.0)
                .stderr(var * (2.0 / raw.len() as f64).sqrt()),
        );

        if edgeworth {
            let corrected = |x: f64| phi(x) + edgeworth_term(x, n).expect("n ≥ 3");
            report.push(Row::new(
                "ks_edgeworth",
                n,
                ks_statistic(&x_asym, corrected),
            ));
            let mut agree = 0;
            let mut signed = 0;
            for &x in &cfg.x_grid {
                let dev = ecdf(&x_asym, x) - phi(x);
                let term = edgeworth_term(x, n)?;
                report.push(Row::new("deviation", n, dev).at(x).target(term));
                if term != 0.0 {
                    signed += 1;
                    if dev.signum() == term.signum() {
                        agree += 1;
                    }
                }
            }
            if signed > 0 {
                report.push(Row::new(
                    "edgeworth_sign_agreement",
                    n,
                    agree as f64 / signed as f64,
                ));
            }
        }
    }
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}
