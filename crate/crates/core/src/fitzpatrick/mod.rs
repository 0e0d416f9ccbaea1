//! Fitzpatrick functions of finite graphs, the maximal representative `P_A`,
//! representation gaps, marginal functions and the singleton-family tests.
//!
//! Finite-sample caveat: `F` computed from a sampled graph never exceeds the
//! Fitzpatrick function of any operator whose graph contains the sample. Negative
//! residuals are conclusive only where the true `F` is known exactly.

pub mod gap;
pub mod marginal;
pub mod representative;
pub mod singleton;
pub mod value;

pub use gap::{direct_gap, gap_value, phi_value, GapReport};
pub use marginal::{marginal_dual, marginal_primal, sandwich_test, ChainReport, SandwichReport};
pub use representative::{representative_check, RepresentativeReport};
pub use singleton::{
    graph_probes, singleton_criterion, singleton_criterion_vkc, singleton_test, CriterionReport,
    EpsOutcome, ProbePair, SingletonVerdict, Verdict,
};
pub use value::{argmax_set, fitzpatrick_value, p_value, p_via_conjugate, ConjugateEstimate, PConjugateOracle};
