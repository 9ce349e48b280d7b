//! Shared pool of exactly solved subproblem evaluations.
//!
//! Every operational node in a decomposed multi-horizon problem instantiates
//! the same scenario template; nodes differ only in the strategic vector `x`
//! handed down by the master and the cost point `c` that prices the dispatch.
//! One exact solve therefore carries information for *every* node, not just
//! the node it was requested for. The pool stores each solve as a
//! [`SamplePoint`] — value plus sensitivities in both arguments — and the
//! oracles in [`crate::oracle`] interpolate the pool instead of paying for
//! new exact solves.

use crate::error::BendersError;
use lpcore::{solve_lp, SolveStatus, ToleranceConfig};
use mhsp::{bind_scenario, ScenarioBlock};

/// One exactly solved evaluation of the expected dispatch cost.
#[derive(Clone, Debug)]
pub struct SamplePoint {
    /// Strategic point the subproblems were solved at.
    pub x: Vec<f64>,
    /// Cost point the dispatch was priced at.
    pub c: Vec<f64>,
    /// Expected dispatch cost over the scenario template (unweighted by any
    /// node probability).
    pub value: f64,
    /// Subgradient of the value with respect to `x`.
    pub x_grad: Vec<f64>,
    /// Supergradient of the value with respect to `c`: the expected cost-row
    /// activity of the optimal dispatch.
    pub c_grad: Vec<f64>,
}

/// Solve every scenario of the template at `(x, c)` and aggregate value and
/// sensitivities with the scenario weights.
///
/// The value is convex and nonincreasing in `x` (capacity and relief only
/// ever help) and concave, positively homogeneous and nondecreasing in `c`
/// (prices scale a fixed dispatch polytope); the oracles rely on both.
pub fn evaluate_exact(
    template: &[ScenarioBlock],
    x: &[f64],
    c: &[f64],
    tol: &ToleranceConfig,
) -> Result<SamplePoint, BendersError> {
    let mut value = 0.0;
    let mut x_grad = vec![0.0; x.len()];
    let mut c_grad = vec![0.0; c.len()];
    for scen in template {
        let lp = bind_scenario(scen, x, c);
        let sol = solve_lp(&lp, tol)?;
        if sol.status != SolveStatus::Optimal {
            return Err(BendersError::Subproblem { status: sol.status });
        }
        value += scen.weight * sol.objective;
        // The strategic vector enters through the rhs as `h - T x`, so the
        // value moves by `-Tᵀ duals` per unit of `x`.
        for r in 0..scen.rhs.len() {
            let d = sol.duals[r];
            if d == 0.0 {
                continue;
            }
            for j in 0..x.len() {
                let t = scen.t.get(r, j);
                if t != 0.0 {
                    x_grad[j] -= scen.weight * d * t;
                }
            }
        }
        for k in 0..c.len() {
            let mut activity = 0.0;
            for j in 0..scen.y_dim() {
                let w = scen.cost_rows.get(k, j);
                if w != 0.0 {
                    activity += w * sol.x[j];
                }
            }
            c_grad[k] += scen.weight * activity;
        }
    }
    Ok(SamplePoint { x: x.to_vec(), c: c.to_vec(), value, x_grad, c_grad })
}

/// Pool of evaluated sample points, seeded with the origin.
#[derive(Clone, Debug)]
pub struct SampleSet {
    /// Index 0 is the origin sample at `(x, c) = (0, 0)`; the remainder are
    /// exact solves in insertion order.
    pub points: Vec<SamplePoint>,
    pub x_dim: usize,
    pub cost_dim: usize,
}

impl SampleSet {
    /// Seed the pool with the origin sample.
    ///
    /// At `x = 0` the dispatch has no capacity and no relief, and at `c = 0`
    /// it costs nothing, so the origin value and `x_grad` are identically
    /// zero. Its cost sensitivity comes from one exact solve at a unit probe
    /// price: positive homogeneity in `c` makes the probe activity a global
    /// cap, `value(0, c) ≤ c_gradᵀ c` for every admissible `c`, which is
    /// what keeps the upper oracle feasible at arbitrary strategic points.
    pub fn bootstrap(
        template: &[ScenarioBlock],
        x_dim: usize,
        cost_dim: usize,
        tol: &ToleranceConfig,
    ) -> Result<Self, BendersError> {
        let zero_x = vec![0.0; x_dim];
        let mut probe = vec![0.0; cost_dim];
        probe[0] = 1.0;
        let at_probe = evaluate_exact(template, &zero_x, &probe, tol)?;
        let origin = SamplePoint {
            x: zero_x,
            c: vec![0.0; cost_dim],
            value: 0.0,
            x_grad: vec![0.0; x_dim],
            c_grad: at_probe.c_grad,
        };
        Ok(Self { points: vec![origin], x_dim, cost_dim })
    }

    pub fn push(&mut self, point: SamplePoint) {
        debug_assert_eq!(point.x.len(), self.x_dim);
        debug_assert_eq!(point.c.len(), self.cost_dim);
        self.points.push(point);
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
