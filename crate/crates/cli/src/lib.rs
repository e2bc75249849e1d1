//! The `qwedge` command line: exporters and the verification suite.

pub mod app;
pub mod emit;
pub mod suite;

pub use app::{run, EXIT_FAILURE, EXIT_OK, EXIT_RESOURCE_CAP, EXIT_USAGE};
