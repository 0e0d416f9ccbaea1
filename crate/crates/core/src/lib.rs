//! `fitzkit`: a desk-scale toolkit for monotone-operator representation theory.
//!
//! The crate builds convex functions and finite operator graphs, evaluates
//! Fitzpatrick functions `F_A`, maximal representatives `P_A` and the
//! representation gap `Φ_f − F_{∂f}`, and runs characterization checks
//! (singleton Fitzpatrick families, n-cyclic monotonicity, subdifferential
//! recovery) against brute-force oracles.
//!
//! Module map:
//! - [`geometry`]: polytopes, polyhedral cones, polar cones and a dense simplex LP.
//! - [`convexfn`]: convex function representations, exact and grid conjugates,
//!   subdifferentials, the support-plus-indicator family [`convexfn::VkcSpec`].
//! - [`operators`]: operator graphs, linear operators, subdifferential sampling.
//! - [`fitzpatrick`]: `F_A`, `P_A`, gap functions, marginals, representative checks.
//! - [`monotonicity`]: n-cyclic/cyclic monotonicity and Rockafellar potentials.
//! - [`scenario`]: JSON scenarios, built-in fixtures and the report runner used by
//!   the `fitzkit` binary.

pub mod convexfn;
pub mod error;
pub mod extended;
pub mod fitzpatrick;
pub mod geometry;
pub mod monotonicity;
pub mod operators;
pub mod scenario;
pub mod vector;

pub use error::{Error, Result};
pub use extended::Extended;
pub use vector::Vector;

/// Global default tolerance for feasibility, orthogonality and equality tests.
pub const DEFAULT_TOL: f64 = 1e-9;
