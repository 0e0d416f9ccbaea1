//! Finite operator graphs, linear operators and subdifferential sampling.

pub mod graph;
pub mod linear;
pub mod sampling;

pub use graph::{transform_graph, transform_pair, DualPair, OperatorGraph};
pub use linear::{circle_points, is_skew, linear_graph, LinearOperator};
pub use sampling::{sample_subdifferential, sample_subdifferential_vkc};
