//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MhspError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid tree: {0}")]
    Tree(String),
    #[error("inconsistent problem data: {0}")]
    Dimension(String),
    #[error(transparent)]
    Solver(#[from] lpcore::LpError),
}
