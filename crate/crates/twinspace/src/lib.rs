//! Std companion to `twinspace-core`: record formats, parallel sieving and
//! the command implementations behind the `twinspace` binary.

pub mod commands;
pub mod format;
pub mod parallel;

pub use commands::{CliError, Outcome};
