//! File formats and command implementations for the `derdim` binary.

pub mod commands;
pub mod format;
pub mod workspace;

pub use commands::Outcome;
pub use workspace::{CliError, Workspace};
