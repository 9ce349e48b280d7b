//! Error type for case loading and model construction.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ReorientError {
    /// The case text could not be parsed; carries the 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The parsed case is structurally inconsistent (dangling references,
    /// impossible parameter combinations, missing series).
    #[error("case data: {0}")]
    Data(String),

    /// A lower layer rejected the assembled model.
    #[error(transparent)]
    Model(#[from] mhsp::MhspError),

    /// Scenario sampling failed.
    #[error(transparent)]
    Sampling(#[from] stoch::StochError),
}
