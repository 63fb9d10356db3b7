//! Command-line front end for the tree energy experiments: file formats,
//! the on-disk energy cache, CSV/JSON output and the subcommands.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod io;
pub mod output;

pub use cli::Cli;
pub use commands::{run, RunOutput};
pub use error::{CliError, Result};
