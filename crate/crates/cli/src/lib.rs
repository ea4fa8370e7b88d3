//! Command-line driver for `fnls-core`.
//!
//! Exit codes: 0 success, 1 self-test failure, 2 configuration error,
//! 3 numerical blow-up, 4 I/O error.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod selftest;

pub use commands::{cmd_case, cmd_compat, cmd_run, cmd_sweep, cmd_unique, Options};
pub use config::RunConfig;
pub use error::{CliError, Result};
