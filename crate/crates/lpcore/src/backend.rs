//! Pluggable solver interface.
//!
//! The modelling and decomposition layers talk to a [`Solver`] rather than
//! to the kernel directly, so an external implementation can be substituted
//! without touching them. The built-in [`DenseSolver`] wraps the simplex,
//! branch and bound, and Chebyshev routines of this crate.

use crate::branch::solve_milp;
use crate::chebyshev::{chebyshev_center, ChebyshevBall};
use crate::problem::{
    LinearProgram, LpError, LpSolution, MilpSolution, MixedIntegerProgram, ToleranceConfig,
};
use crate::simplex::solve_lp;

pub trait Solver: Send + Sync {
    fn solve_lp(&self, lp: &LinearProgram) -> Result<LpSolution, LpError>;
    fn solve_milp(&self, mip: &MixedIntegerProgram) -> Result<MilpSolution, LpError>;
    fn chebyshev_center(&self, lp: &LinearProgram) -> Result<ChebyshevBall, LpError>;
}

/// The built-in dense kernel.
#[derive(Clone, Debug, Default)]
pub struct DenseSolver {
    pub tol: ToleranceConfig,
}

impl DenseSolver {
    pub fn new(tol: ToleranceConfig) -> Self {
        Self { tol }
    }
}

impl Solver for DenseSolver {
    fn solve_lp(&self, lp: &LinearProgram) -> Result<LpSolution, LpError> {
        solve_lp(lp, &self.tol)
    }

    fn solve_milp(&self, mip: &MixedIntegerProgram) -> Result<MilpSolution, LpError> {
        solve_milp(mip, &self.tol)
    }

    fn chebyshev_center(&self, lp: &LinearProgram) -> Result<ChebyshevBall, LpError> {
        chebyshev_center(lp, &self.tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::LpBuilder;
    use approx::assert_relative_eq;

    #[test]
    fn usable_as_a_trait_object() {
        let solver = DenseSolver::default();
        let dyn_solver: &dyn Solver = &solver;
        let mut b = LpBuilder::new();
        b.add_col("x", 1.0, 2.0, 1.0);
        let sol = dyn_solver.solve_lp(&b.build()).unwrap();
        assert_relative_eq!(sol.objective, 1.0, max_relative = 1e-9);
    }
}
