//! Library side of the `helicoid` command line tool.

pub mod commands;
pub mod descriptor;
pub mod output;

use helicoid::classify::ClassifyError;
use helicoid::numeric::NumericError;
use helicoid::surface::SurfaceError;
use thiserror::Error;

use descriptor::DescriptorError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Degenerate(String),
    #[error("{0}")]
    Failed(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Failed(_) => 4,
            CliError::Io { .. } => 5,
        }
    }
}

impl From<DescriptorError> for CliError {
    fn from(e: DescriptorError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<SurfaceError> for CliError {
    fn from(e: SurfaceError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<ClassifyError> for CliError {
    fn from(e: ClassifyError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<NumericError> for CliError {
    fn from(e: NumericError) -> Self {
        match e {
            NumericError::DegenerateMetric { .. } => CliError::Degenerate(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}
