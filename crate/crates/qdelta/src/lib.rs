//! File formats, fixtures and command implementations behind the `qdelta`
//! binary.

pub mod cli;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod table;

pub use error::{CliError, CliResult};
