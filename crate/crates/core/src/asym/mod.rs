//! Closed-form asymptotics, their special functions, and the CLT
//! normalizers.
//!
//! Large values are carried as logarithms ([`AsymptoticEstimate`]); ratio
//! checks against the series module compare in log space.

mod bounds;
mod clt;
mod mellin;
mod moments;
mod special;

pub use bounds::{closed_form_ln_bound, cycle_count_sd, skew_bound, skew_bound_robbins, SkewBound};
pub use clt::{asymptotic_normalizers, edgeworth_term, normalizers, Normalizers};
pub use mellin::{mellin_expansion, mellin_lhs, mellin_remainder_ratios};
pub use moments::{
    conditional_mean_asym, ln_k_theta, mean_asym, second_moment_asym,
    second_moment_asym_uncorrected, wright_leading, AsymptoticEstimate, ErrorExponent, Regime,
};
pub use special::{
    gamma, harmonic, li2, ln_factorial, ln_factorial_robbins, ln_gamma, phi, polylog, ZETA2,
};
