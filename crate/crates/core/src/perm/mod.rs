//! Exact integer combinatorics of involution factorizations.
//!
//! A permutation is summarized by its cycle type; [`invol`] and [`big_b`]
//! are class functions of it. [`brute_force_invol`] enumerates involution
//! pairs directly and serves as the independent oracle.

mod classes;
mod cycle_type;
mod invol;
mod permutation;

pub use classes::{class_size, enumerate_cycle_types, partition_count, CycleTypes};
pub use cycle_type::{CycleCounts, CycleType};
pub use invol::{
    big_b, brute_force_invol, brute_force_invol_with_cap, invol, invol_hermite, ln_big_b, ln_invol,
    ln_v_factor, telephone, v_factor, InvolutionPairs, DEFAULT_BRUTE_FORCE_CAP,
};
pub use permutation::{involutions, permutations, Permutation, Permutations};
