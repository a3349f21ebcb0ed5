//! Command-line front end: the JSON cover-spec format, report records and
//! the subcommands behind the `prym` binary.

pub mod commands;
pub mod report;
pub mod spec_file;

pub use commands::{Failure, Outcome, EXIT_BOUND, EXIT_INADMISSIBLE, EXIT_PARSE, EXIT_VERIFY_FAILED};
pub use spec_file::{CoverSpecFile, SCHEMA_VERSION};
