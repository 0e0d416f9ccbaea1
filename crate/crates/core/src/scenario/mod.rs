//! Scenario files, built-in fixtures and the report runner behind the `fitzkit` binary.

pub mod builtin;
pub mod runner;
pub mod schema;

pub use builtin::{abs_spec, generate_builtin, strip_spec, BUILTIN_NAMES};
pub use runner::{resolve_object, run_scenario, run_suite, scenario_hash, Resolved, RunSummary, SuiteOutput};
pub use schema::{Scenario, SuiteDef};
