//! Monte Carlo experiments on Feller-coupled samples.
//!
//! Each experiment takes an [`ExperimentConfig`], draws its samples in
//! fixed-size chunks on independent ChaCha streams (so the thread count never
//! changes a result) and returns an [`ExperimentReport`] of flat rows.

mod clt;
mod composition;
mod config;
mod functional;
mod inequalities;
mod membership;
mod parallel;
mod path;
mod report;
mod stats;

pub use clt::clt_experiment;
pub use composition::{
    composition_bias_experiment, involution_pair_total, limit_pmf, IDENTITY_MAX_N, PMF_MAX,
};
pub use config::ExperimentConfig;
pub use functional::functional_experiment;
pub use inequalities::{
    check_sample, dominated_violation, inequality_suite, quadratic_excess, random_dominated,
    CHECKS, MAX_RECORDED_FAILURES,
};
pub use membership::{in_p_xi, membership_experiment, EXACT_MEMBERSHIP_MAX_N};
pub use parallel::{par_samples, CHUNK};
pub use path::{grid_cutoff, log_invol_prefix, PathSample};
pub use report::{ExperimentReport, Failure, Row, SCHEMA_VERSION};
pub use stats::{covariance, ecdf, ks_statistic, mean, sem, variance};
