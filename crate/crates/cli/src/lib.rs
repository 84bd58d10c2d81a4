//! Command-line front end for `pmlab-core`: argument parsing, commands and
//! the run-record file format.

pub mod commands;
pub mod record;

pub use commands::{exit_code, run, Cli, CliError, Command, Format};
pub use record::{RecordError, RunRecord, Value};
