//! Experiment runner for `orbitcone`: named experiments, seeded trials and
//! JSON/CSV reports.

pub mod config;
pub mod corpus;
pub mod experiments;
pub mod report;

use std::path::PathBuf;

pub use config::{Ctx, ExperimentConfig, Format};
pub use report::{emit, Check, Report, Summary, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Schema(String),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
}

impl CliError {
    pub fn schema(e: impl std::fmt::Display) -> Self {
        CliError::Schema(e.to_string())
    }

    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
