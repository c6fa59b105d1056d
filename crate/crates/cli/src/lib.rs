//! JSON wire formats and self-test suites for the `bc-cli` binary; kept as
//! a library so integration tests can drive the same code paths.

pub mod json;
pub mod suites;
