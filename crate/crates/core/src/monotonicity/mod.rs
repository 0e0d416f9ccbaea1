//! n-cyclic and cyclic monotonicity of finite graphs, Rockafellar potentials and
//! the subdifferential-recovery suite for `x ↦ F_A(x, v*)`.
//!
//! One sign convention throughout: a cycle `a_1 → … → a_n → a_1` has sum
//! `Σ ⟨a_{i+1} − a_i, a_i*⟩`, and monotonicity means every such sum is `≤ 0`.

pub mod cyclic;
pub mod potential;
pub mod theorem_a;

pub use cyclic::{
    cycle_sum, is_cyclically_monotone, is_n_monotone, is_n_monotone_with, CycleWitness, EnumerationCaps,
    MonotonicityVerdict,
};
pub use potential::rockafellar_potential;
pub use theorem_a::{theorem_a_suite, TheoremAReport};
