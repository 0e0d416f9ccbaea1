//! Polytopes, polyhedral cones and the support/indicator/polar calculus.
//!
//! Polytopes are stored by vertices, cones by generators; H-representations
//! only appear as polar cones. Every query is a maximum or an LP feasibility
//! problem over finitely many vertices and generators.

pub mod cone;
pub mod lp;
pub mod polytope;

pub use cone::{
    minkowski_membership, orthogonality_check, polar_cone, polytope_plus_polar_membership,
    PolarCone, PolyhedralCone,
};
pub use lp::{LpResult, LpStatus, StandardForm};
pub use polytope::{convex_conic_combination, Polytope};
