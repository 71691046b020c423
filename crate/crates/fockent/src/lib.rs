//! Command-line front end for `fockent-core`.
//!
//! Every command produces a [`report::RunReport`] (the JSON output) and a
//! [`table::Table`] (the CSV output). Exit status is 0 on success, 1 when a
//! `verify` check fails, 2 for rejected input and 3 for numerical failures;
//! failures are also described by a single JSON line on standard error.

pub mod cli;
pub mod commands;
pub mod error;
pub mod figures;
pub mod report;
pub mod state;
pub mod table;
pub mod verify;

pub use error::{CliError, CliResult, ErrorKind};
