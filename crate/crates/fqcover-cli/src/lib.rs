//! Command-line front end for the `fqcover` library: the `.cov` text
//! format plus the subcommand implementations behind the `fqcover`
//! binary.  Exposed as a library so integration tests can drive the
//! parser and formatter directly.

pub mod commands;
pub mod covfile;

pub use commands::{run, Cli};
