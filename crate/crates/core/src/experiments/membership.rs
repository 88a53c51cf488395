use std::time::Instant;

use rug::Rational;

use super::config::ExperimentConfig;
use super::parallel::par_samples;
use super::report::{ExperimentReport, Row};
use crate::asym::skew_bound;
use crate::error::Result;
use crate::esf::{feller_ones, SpacingSample};
use crate::perm::{ln_invol, CycleCounts};
use crate::series::{membership_probabilities, Exact};

/// Largest `n` at which the exact membership series is used as the target.
pub const EXACT_MEMBERSHIP_MAX_N: u64 = 200;

/// Whether the counts lie in `P_ξ`: lengths `k ≤ ξ` occur at most `⌊ξ⌋`
/// times and longer lengths at most once.
pub fn in_p_xi(c: &CycleCounts, xi: f64) -> bool {
    c.iter().all(|(k, m)| {
        if k as f64 <= xi {
            m as f64 <= xi.floor()
        } else {
            m <= 1
        }
    })
}

/// Frequency of `σ ∉ P_ξ` over `ξ` in `xi_grid`.
///
/// Rows per `n`: `p_outside` at ξ (target from the exact series when `n` is
/// small and θ exact) and `xi_p_outside`, ξ times the frequency. With
/// `skew = (ξ₁, ξ₂)` set, also `below_skew_bound`, the fraction of samples
/// with `log invol` under the typical-value bound, with the guaranteed
/// fraction as target. That bound is stated for uniform permutations.
pub fn membership_experiment(cfg: &ExperimentConfig, xi_grid: &[f64]) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let theta = cfg.theta.theta();
    let max_n = cfg.max_n() as usize;
    let skew: Vec<Option<f64>> = cfg
        .n
        .iter()
        .map(|&n| {
            cfg.skew
                .map(|(a, b)| skew_bound(n, a, b).map(|s| s.ln_bound))
                .transpose()
        })
        .collect::<Result<_>>()?;

    let draws = par_samples(cfg.samples, cfg.seed, |rng| {
        let ones = feller_ones(theta, max_n, rng);
        cfg.n
            .iter()
            .zip(&skew)
            .map(|(&n, bound)| {
                let n = n as usize;
                let s = SpacingSample::from_ones(n, n, ones.clone()).expect("valid Feller run");
                let outside: Vec<bool> = xi_grid.iter().map(|&xi| !in_p_xi(s.c(), xi)).collect();
                let below = bound.map(|b| ln_invol(s.c(), n) <= b);
                (outside, below)
            })
            .collect::<Vec<_>>()
    });

    let count = draws.len() as f64;
    let mut report = ExperimentReport::new("membership", cfg);
    for (i, &n) in cfg.n.iter().enumerate() {
        for (j, &xi) in xi_grid.iter().enumerate() {
            let p = draws.iter().filter(|d| d[i].0[j]).count() as f64 / count;
            let se = (p * (1.0 - p) / count).sqrt();
            let mut row = Row::new("p_outside", n, p).at(xi).stderr(se);
            if n <= EXACT_MEMBERSHIP_MAX_N && cfg.theta.is_exact() {
                let inside =
                    &membership_probabilities(&Exact, &cfg.theta, xi, n as usize)?[n as usize];
                row = row.target((Rational::from(1) - inside).to_f64());
            }
            report.push(row);
            report.push(Row::new("xi_p_outside", n, xi * p).at(xi).stderr(xi * se));
        }
        if let (Some((a, b)), Some(_)) = (cfg.skew, skew[i]) {
            let frac = draws.iter().filter(|d| d[i].1 == Some(true)).count() as f64 / count;
            let guarantee = skew_bound(n, a, b)?.prob_guarantee;
            report.push(
                Row::new("below_skew_bound", n, frac)
                    .at2(a as f64, b as f64)
                    .target(guarantee),
            );
        }
    }
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::esf::EsfParams;

    #[test]
    fn p_xi_membership() {
        let c = CycleCounts::from_pairs([(1, 3), (5, 1), (6, 2)]).unwrap();
        assert!(!in_p_xi(&c, 2.0));
        assert!(!in_p_xi(&c, 5.0));
        assert!(in_p_xi(&c, 6.0));
        assert!(in_p_xi(&c, 17.0));
    }

    #[test]
    fn nothing_outside_at_xi_equal_n() {
        let cfg = ExperimentConfig::new(vec![30], EsfParams::ratio(2, 1).unwrap(), 2000);
        let r = membership_experiment(&cfg, &[30.0]).unwrap();
        assert_eq!(r.get("p_outside", 30).unwrap().value, 0.0);
        assert_eq!(r.get("p_outside", 30).unwrap().target, Some(0.0));
    }

    #[test]
    fn skew_preconditions_surface() {
        let mut cfg = ExperimentConfig::new(vec![100], EsfParams::ratio(1, 1).unwrap(), 10);
        cfg.skew = Some((5, 20));
        match membership_experiment(&cfg, &[2.0]) {
            Err(Error::Precondition(v)) => assert!(v.len() >= 2),
            other => panic!("{other:?}"),
        }
    }
}
