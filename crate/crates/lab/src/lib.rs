//! Command-line front end for `sdepth-core`: input parsing, certificate
//! output and caching, and the experiment sweeps.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod error;

pub use cli::{Cli, Command};
pub use commands::{Output, OutputFormat, RunConfig};
pub use error::LabError;
