//! Command-line plumbing for `mannheim`: surface files, exports and subcommands.

pub mod commands;
pub mod export;
pub mod surface_file;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const GEOMETRY: i32 = 2;
    pub const THEOREM: i32 = 3;
    pub const USAGE: i32 = 64;
}

#[derive(Debug, Error)]
#[error("{message}")]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: exit::INPUT, message: message.into() }
    }

    pub fn geometry(message: impl Into<String>) -> Self {
        CliError { code: exit::GEOMETRY, message: message.into() }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        CliError { code: exit::USAGE, message: message.into() }
    }

    pub fn io(e: std::io::Error) -> Self {
        CliError::input(e.to_string())
    }
}
