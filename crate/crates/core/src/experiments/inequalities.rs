use std::time::Instant;

use rand::Rng;

use super::config::ExperimentConfig;
use super::parallel::par_samples;
use super::report::{ExperimentReport, Failure, Row};
use crate::error::Result;
use crate::esf::{feller_ones, SpacingSample};
use crate::perm::{ln_big_b, ln_invol, CycleCounts};

/// Failures kept in a report; the counts cover all of them.
pub const MAX_RECORDED_FAILURES: usize = 100;

/// Slack for double rounding in log-space comparisons.
const TOL: f64 = 1e-9;

pub const CHECKS: [&str; 4] = ["invol_ge_b", "log_ratio", "sandwich", "dominated"];

/// `Σ_{k ≤ upto} c_k²/(2k)`.
pub fn quadratic_excess(c: &CycleCounts, upto: usize) -> f64 {
    c.iter()
        .take_while(|&(k, _)| k <= upto)
        .map(|(k, m)| (m * m) as f64 / (2 * k) as f64)
        .sum()
}

fn slack(x: f64) -> f64 {
    TOL * x.abs().max(1.0)
}

/// First `j ≤ n` at which
/// `log invol_j(b) ≤ log invol_j(a) + ‖b−a‖₁ log n + Σ_{k≤n} b_k²/(2k)` fails,
/// for `a ≤ b` coordinatewise. Both sides only change where `b` has support,
/// so those are the only `j` examined. `None` means the bound holds.
pub fn dominated_violation(a: &CycleCounts, b: &CycleCounts, n: usize) -> Option<usize> {
    assert!(a.dominated_by(b), "a must be dominated by b");
    let gap = a.l1_gap(b).expect("dominated") as f64;
    let extra = gap * (n as f64).ln() + quadratic_excess(b, n);
    b.iter().map(|(k, _)| k).take_while(|&k| k <= n).find(|&j| {
        let lhs = ln_invol(b, j);
        let rhs = ln_invol(a, j) + extra;
        lhs > rhs + slack(lhs)
    })
}

/// Keeps each unit of `b` independently-uniformly: `a_k` uniform on `0..=b_k`.
pub fn random_dominated<R: Rng + ?Sized>(b: &CycleCounts, rng: &mut R) -> CycleCounts {
    CycleCounts::from_pairs(b.iter().map(|(k, m)| (k, rng.random_range(0..=m)))).expect("k ≥ 1")
}

/// Runs the four sample-level checks; returns `(check, detail)` per failure.
pub fn check_sample<R: Rng + ?Sized>(
    s: &SpacingSample,
    rng: &mut R,
) -> Vec<(&'static str, String)> {
    let n = s.n();
    let c = s.c();
    let mut out = Vec::new();
    let (li, lb) = (ln_invol(c, n), ln_big_b(c, n));
    if li < lb - slack(lb) {
        out.push((CHECKS[0], format!("log invol {li} < log B {lb}")));
    }
    let excess = quadratic_excess(c, n);
    if li - lb > excess + slack(li) {
        out.push((
            CHECKS[1],
            format!("log invol − log B = {} > Σc²/2k = {excess}", li - lb),
        ));
    }
    let bad = s.sandwich_violations();
    if !bad.is_empty() {
        out.push((CHECKS[2], format!("sandwich fails at k = {bad:?}")));
    }
    let z_window = s.z().truncated(n);
    for b in [c, &z_window] {
        let a = random_dominated(b, rng);
        if let Some(j) = dominated_violation(&a, b, n) {
            out.push((CHECKS[3], format!("a = {a}, b = {b}, j = {j}")));
        }
    }
    out
}

/// Hard property checks on every sample; each row is a violation count.
///
/// Rows per `n`: `samples`, one `violations_<check>` per entry of [`CHECKS`]
/// and `violations_total` (target 0). Up to [`MAX_RECORDED_FAILURES`]
/// failures are kept with their samples.
pub fn inequality_suite(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let start = Instant::now();
    let theta = cfg.theta.theta();
    let hf = cfg.horizon_factor;
    let top = hf * cfg.max_n() as usize;

    let draws = par_samples(cfg.samples, cfg.seed, |rng| {
        let ones = feller_ones(theta, top, rng);
        cfg.n
            .iter()
            .map(|&n| {
                let n = n as usize;
                let s =
                    SpacingSample::from_ones(n, hf * n, ones.clone()).expect("valid Feller run");
                let fails = check_sample(&s, rng);
                (fails, s)
            })
            .filter(|(f, _)| !f.is_empty())
            .collect::<Vec<_>>()
    });

    let mut report = ExperimentReport::new("inequalities", cfg);
    for &n in &cfg.n {
        let mut counts = [0usize; CHECKS.len()];
        for (fails, s) in draws.iter().flatten().filter(|(_, s)| s.n() as u64 == n) {
            for (check, detail) in fails {
                counts[CHECKS.iter().position(|c| c == check).expect("known check")] += 1;
                if report.failures.len() < MAX_RECORDED_FAILURES {
                    report.failures.push(Failure {
                        check: check.to_string(),
                        detail: detail.clone(),
                        sample: Some(s.clone()),
                    });
                }
            }
        }
        report.push(Row::new("samples", n, cfg.samples as f64));
        for (check, &k) in CHECKS.iter().zip(&counts) {
            report.push(Row::new(&format!("violations_{check}"), n, k as f64).target(0.0));
        }
        report
            .push(Row::new("violations_total", n, counts.iter().sum::<usize>() as f64).target(0.0));
    }
    report.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esf::EsfParams;

    #[test]
    fn equal_pair_holds() {
        let b = CycleCounts::from_pairs([(1, 4), (3, 2), (7, 1)]).unwrap();
        assert_eq!(dominated_violation(&b, &b, 20), None);
    }

    #[test]
    fn heavy_fixed_points() {
        let b = CycleCounts::from_pairs([(1, 50), (2, 3), (900, 1)]).unwrap();
        for a in [
            CycleCounts::new(),
            CycleCounts::from_pairs([(1, 1)]).unwrap(),
            b.clone(),
        ] {
            assert_eq!(dominated_violation(&a, &b, 1000), None);
        }
    }

    #[test]
    fn a_tightened_bound_would_fail() {
        // Dropping the quadratic term is not enough: the V-factor of 50 fixed
        // points exceeds n^0.
        let b = CycleCounts::from_pairs([(1, 50)]).unwrap();
        assert!(ln_invol(&b, 1) > 0.0);
    }

    #[test]
    fn small_suite_is_clean() {
        let cfg = ExperimentConfig::new(vec![50, 300], EsfParams::ratio(2, 1).unwrap(), 3000);
        let r = inequality_suite(&cfg).unwrap();
        assert!(r.failures.is_empty());
        assert_eq!(r.get("violations_total", 300).unwrap().value, 0.0);
    }
}
