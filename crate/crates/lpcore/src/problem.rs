//! Problem and solution containers shared by the simplex and the tree search.

use crate::matrix::Matrix;
use thiserror::Error;

/// Row sense of a linear constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Eq,
    Ge,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Eq => "=",
            Sense::Ge => ">=",
        }
    }
}

/// `min c'x  s.t.  A x (<=,=,>=) b,  l <= x <= u`.
///
/// Bounds may be infinite. Row and column names are carried for export and
/// diagnostics; they are never interpreted by the solver.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub a: Matrix,
    pub senses: Vec<Sense>,
    pub rhs: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub col_names: Vec<String>,
    pub row_names: Vec<String>,
}

impl LinearProgram {
    pub fn num_cols(&self) -> usize {
        self.objective.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    /// Structural sanity: matching dimensions, ordered bounds, finite data.
    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_cols();
        let m = self.num_rows();
        if self.a.cols() != n || self.a.rows() != m {
            return Err(LpError::Shape(format!(
                "matrix is {}x{}, expected {}x{}",
                self.a.rows(),
                self.a.cols(),
                m,
                n
            )));
        }
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::Shape("bound vectors do not match column count".into()));
        }
        if self.senses.len() != m {
            return Err(LpError::Shape("sense vector does not match row count".into()));
        }
        if !self.col_names.is_empty() && self.col_names.len() != n {
            return Err(LpError::Shape("column names do not match column count".into()));
        }
        if !self.row_names.is_empty() && self.row_names.len() != m {
            return Err(LpError::Shape("row names do not match row count".into()));
        }
        for j in 0..n {
            if self.lower[j] > self.upper[j] {
                return Err(LpError::Shape(format!("column {j}: lower bound exceeds upper bound")));
            }
            if self.lower[j].is_nan() || self.upper[j].is_nan() || !self.objective[j].is_finite() {
                return Err(LpError::Shape(format!("column {j}: non-finite data")));
            }
        }
        for i in 0..m {
            if !self.rhs[i].is_finite() {
                return Err(LpError::Shape(format!("row {i}: non-finite right-hand side")));
            }
            for &v in self.a.row(i) {
                if !v.is_finite() {
                    return Err(LpError::Shape(format!("row {i}: non-finite coefficient")));
                }
            }
        }
        Ok(())
    }

    pub fn col_name(&self, j: usize) -> String {
        self.col_names.get(j).cloned().unwrap_or_else(|| format!("c{j}"))
    }

    pub fn row_name(&self, i: usize) -> String {
        self.row_names.get(i).cloned().unwrap_or_else(|| format!("r{i}"))
    }
}

/// Incremental builder: columns and sparse row entries, densified once.
#[derive(Clone, Debug, Default)]
pub struct LpBuilder {
    cost: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    col_names: Vec<String>,
    senses: Vec<Sense>,
    rhs: Vec<f64>,
    row_names: Vec<String>,
    entries: Vec<(u32, u32, f64)>,
}

impl LpBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_col(&mut self, name: impl Into<String>, lower: f64, upper: f64, cost: f64) -> usize {
        self.cost.push(cost);
        self.lower.push(lower);
        self.upper.push(upper);
        self.col_names.push(name.into());
        self.cost.len() - 1
    }

    pub fn add_row(&mut self, name: impl Into<String>, sense: Sense, rhs: f64) -> usize {
        self.senses.push(sense);
        self.rhs.push(rhs);
        self.row_names.push(name.into());
        self.rhs.len() - 1
    }

    /// Accumulate a coefficient; repeated (row, col) pairs sum.
    pub fn set(&mut self, row: usize, col: usize, coef: f64) {
        debug_assert!(row < self.rhs.len() && col < self.cost.len());
        if coef != 0.0 {
            self.entries.push((row as u32, col as u32, coef));
        }
    }

    pub fn add_cost(&mut self, col: usize, extra: f64) {
        self.cost[col] += extra;
    }

    pub fn num_cols(&self) -> usize {
        self.cost.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rhs.len()
    }

    pub fn build(self) -> LinearProgram {
        let mut a = Matrix::zeros(self.rhs.len(), self.cost.len());
        for (r, c, v) in self.entries {
            a.add_to(r as usize, c as usize, v);
        }
        LinearProgram {
            objective: self.cost,
            a,
            senses: self.senses,
            rhs: self.rhs,
            lower: self.lower,
            upper: self.upper,
            col_names: self.col_names,
            row_names: self.row_names,
        }
    }
}

/// A linear program plus the set of columns restricted to {0, 1}.
#[derive(Clone, Debug)]
pub struct MixedIntegerProgram {
    pub lp: LinearProgram,
    /// Sorted, de-duplicated column indices that must take binary values.
    pub binary: Vec<usize>,
}

impl MixedIntegerProgram {
    pub fn new(lp: LinearProgram, mut binary: Vec<usize>) -> Self {
        binary.sort_unstable();
        binary.dedup();
        MixedIntegerProgram { lp, binary }
    }

    pub fn validate(&self) -> Result<(), LpError> {
        self.lp.validate()?;
        for &j in &self.binary {
            if j >= self.lp.num_cols() {
                return Err(LpError::Shape(format!("binary marker {j} out of range")));
            }
        }
        Ok(())
    }

    /// The continuous relaxation: binary columns clipped into [0, 1].
    pub fn relaxation(&self) -> LinearProgram {
        let mut lp = self.lp.clone();
        for &j in &self.binary {
            lp.lower[j] = lp.lower[j].max(0.0);
            lp.upper[j] = lp.upper[j].min(1.0);
        }
        lp
    }
}

/// Solver outcome for a well-posed problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// Primal/dual solution of a linear program.
///
/// `duals[i]` is the change of the optimal objective per unit increase of
/// `rhs[i]`; `reduced_costs[j]` is the objective cost of moving column `j`
/// off its bound. Both are only meaningful when `status == Optimal`.
#[derive(Clone, Debug)]
pub struct LpSolution {
    pub status: SolveStatus,
    pub objective: f64,
    pub x: Vec<f64>,
    pub duals: Vec<f64>,
    pub reduced_costs: Vec<f64>,
    pub iterations: usize,
}

impl LpSolution {
    pub fn infeasible() -> Self {
        LpSolution {
            status: SolveStatus::Infeasible,
            objective: f64::NAN,
            x: Vec::new(),
            duals: Vec::new(),
            reduced_costs: Vec::new(),
            iterations: 0,
        }
    }
}

/// Search counters reported by branch and bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct SearchStats {
    /// Nodes whose relaxation was solved (the root included).
    pub nodes: usize,
    /// Number of branchings performed (0 when the root relaxation is integral).
    pub branchings: usize,
    /// Total simplex iterations across all node relaxations.
    pub lp_iterations: usize,
}

/// Solution of a mixed-integer program.
#[derive(Clone, Debug)]
pub struct MilpSolution {
    pub status: SolveStatus,
    pub objective: f64,
    pub x: Vec<f64>,
    /// Best proven lower bound on the optimum (equals `objective` on optimal exit).
    pub best_bound: f64,
    pub stats: SearchStats,
}

/// Numerical tolerances and resource limits for the kernel.
///
/// The defaults are deliberate:
/// * `feasibility`/`optimality` at 1e-7 — tight enough for the oracle
///   comparisons in the test suite, loose enough for dense arithmetic on
///   equilibrated data.
/// * `integrality` at 1e-6 — a binary is accepted when within 1e-6 of 0 or 1.
/// * `degenerate_pivot_limit` at 50 — after this many consecutive degenerate
///   pivots the pricing switches to Bland's rule, which cannot cycle.
#[derive(Clone, Copy, Debug)]
pub struct ToleranceConfig {
    pub feasibility: f64,
    pub optimality: f64,
    pub integrality: f64,
    /// Consecutive degenerate pivots before switching to Bland's rule.
    pub degenerate_pivot_limit: usize,
    /// Pivots between basis refactorizations.
    pub refactor_interval: usize,
    /// Hard cap on simplex iterations; 0 means `2000 + 200 * (rows + cols)`.
    pub max_simplex_iterations: usize,
    /// Hard cap on branch-and-bound nodes.
    pub max_nodes: usize,
    /// Largest accepted number of binary columns.
    pub max_binaries: usize,
    /// Equilibrate rows and columns (powers of two, exact in floats).
    pub scale: bool,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            feasibility: 1e-7,
            optimality: 1e-7,
            integrality: 1e-6,
            degenerate_pivot_limit: 50,
            refactor_interval: 200,
            max_simplex_iterations: 0,
            max_nodes: 200_000,
            max_binaries: 64,
            scale: true,
        }
    }
}

/// Kernel failure modes. Infeasible/unbounded are *answers* (see
/// [`SolveStatus`]), not errors; errors mean the question was malformed or
/// resources ran out.
#[derive(Debug, Error)]
pub enum LpError {
    #[error("malformed problem: {0}")]
    Shape(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("iteration limit {0} exceeded")]
    IterationLimit(usize),
    #[error("node budget {0} exceeded")]
    NodeBudget(usize),
    #[error("{0} binary columns exceed the configured budget of {1}")]
    BinaryBudget(usize, usize),
}
