//! Convex functions: exact polyhedral representations, the support-plus-indicator
//! family, sampled fields, conjugates and subdifferentials.

pub mod function;
pub mod grid;
pub mod infconv;
pub mod legendre;
pub mod vkc;

pub use function::{eps_subgradient_test, ConvexFunction, Subdifferential};
pub use grid::{Axis, FieldGrid, Lattice};
pub use infconv::inf_convolution_grid;
pub use legendre::{conjugate_grid, grid_modulus, legendre_grid};
pub use vkc::{conjugate_vkc, eval_vkc, VkcJson, VkcSpec};
