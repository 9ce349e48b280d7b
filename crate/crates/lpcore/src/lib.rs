//! Dense linear and mixed-integer programming kernel.
//!
//! The crate provides everything the decomposition layers need from a
//! solver, self-contained and deterministic:
//!
//! * [`simplex::solve_lp`] — two-phase revised simplex for bounded
//!   variables with an explicit basis inverse, returning primal values,
//!   row duals and reduced costs;
//! * [`branch::solve_milp`] — branch and bound over binary columns;
//! * [`chebyshev::chebyshev_center`] — largest inscribed ball of a
//!   feasible region, with equality rows eliminated through an orthonormal
//!   null-space basis;
//! * [`backend::Solver`] — the trait the higher layers depend on, with
//!   [`backend::DenseSolver`] as the built-in implementation.
//!
//! Determinism matters more than raw speed here: given the same program,
//! every routine performs the same pivots and returns bitwise-identical
//! results on every run. Tie-breaking rules are fixed, arithmetic is
//! sequential, and scaling factors are rounded to powers of two so they
//! never perturb the mantissa.

pub mod backend;
pub mod branch;
pub mod chebyshev;
pub mod export;
pub mod matrix;
pub mod problem;
pub mod simplex;

pub use backend::{DenseSolver, Solver};
pub use branch::solve_milp;
pub use chebyshev::{chebyshev_center, ChebyshevBall};
pub use matrix::{dot, norm2, Matrix};
pub use problem::{
    LinearProgram, LpBuilder, LpError, LpSolution, MilpSolution, MixedIntegerProgram,
    SearchStats, Sense, SolveStatus, ToleranceConfig,
};
pub use simplex::{duality_gap, solve_lp};
