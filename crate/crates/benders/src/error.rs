//! Error type shared by the decomposition solvers.

use lpcore::{LpError, SolveStatus};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BendersError {
    #[error("linear programming kernel: {0}")]
    Kernel(#[from] LpError),
    #[error("the strategic master problem is infeasible")]
    MasterInfeasible,
    #[error("the strategic master problem is unbounded; the operational value floor does not hold")]
    MasterUnbounded,
    #[error("operational subproblem ended {status:?} at a queried strategic point")]
    Subproblem { status: SolveStatus },
    #[error("invalid configuration: {0}")]
    Config(String),
}
