//! Involution factorizations of Ewens-distributed random permutations.
//!
//! `invol(σ)` counts the ordered pairs of involutions `(τ₁, τ₂)` with
//! `σ = τ₂ ∘ τ₁`. This crate computes it exactly, studies its first two
//! moments under the Ewens measure `ESF(θ)` through generating functions and
//! their asymptotics, and reproduces its lognormal limit law by Monte Carlo
//! on the Feller coupling.
//!
//! Module map:
//!
//! * [`perm`]: cycle types, permutations, exact `invol` and `B`, brute-force
//!   oracles, conjugacy-class enumeration.
//! * [`esf`]: Ewens probabilities, the Feller coupling sampler, uniform
//!   involutions, seeded random streams.
//! * [`series`]: truncated power series over exact rationals or MPFR reals,
//!   and the generating functions for the mean, second moment, conditional
//!   mean and `P_ξ` membership.
//! * [`asym`]: closed-form asymptotics, special functions, Mellin checks,
//!   CLT normalizers.
//! * [`experiments`]: Monte Carlo experiments with serializable reports.
//! * [`cli`]: the command-line adapter behind the `invol` binary.

#![forbid(unsafe_code)]
// Guards are written `!(x > 0.0)` so that NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asym;
pub mod cli;
pub mod error;
pub mod esf;
pub mod experiments;
pub mod perm;
pub mod series;

pub use error::{Error, Result};
pub use esf::{EsfParams, RngSeed, SpacingSample};
pub use perm::{CycleCounts, CycleType, Permutation};
