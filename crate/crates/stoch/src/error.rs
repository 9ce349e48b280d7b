//! Error type shared by the uncertainty-modelling operations.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum StochError {
    /// Parameter set violates a model invariant.
    #[error("invalid parameters: {0}")]
    Params(String),

    /// Malformed input text, with its 1-based line number.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Input data too short or incomplete for the requested operation.
    #[error("insufficient data: {0}")]
    Data(String),

    /// A tree operation produced or received an inconsistent tree.
    #[error("tree: {0}")]
    Tree(String),
}
