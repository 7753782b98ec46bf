//! File-level front end for `skinseg`: image and mask I/O, dataset
//! manifests, the synthetic dataset generator and the CLI subcommands.

pub mod commands;
pub mod error;
pub mod io;
pub mod manifest;
pub mod synth;

pub use error::{CliError, Result, EXIT_IO, EXIT_USAGE};
