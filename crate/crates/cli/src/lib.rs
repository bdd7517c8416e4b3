//! Configuration loading, command implementations and machine-readable
//! output for the `gupab` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod verify;

pub use config::{load_config, parse_config, RawConfig, RunConfig};
pub use error::{CliError, CliResult};
