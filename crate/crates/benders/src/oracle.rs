//! Adaptive value oracles: certified bounds on the expected dispatch cost
//! interpolated from the sample pool.
//!
//! Both oracles are small linear programs over mixing weights, one per
//! stored sample. They exploit the structure of the exact value function
//! `v(x, c)` — convex and nonincreasing in the strategic point, concave,
//! positively homogeneous and nondecreasing in the cost point:
//!
//! * the *lower* oracle mixes supporting planes in `x` and may scale them,
//!   as long as the mixed cost points stay below the queried one;
//! * the *upper* oracle mixes supporting planes in `c` over sampled
//!   strategic points dominated by the queried one.
//!
//! Every new exact solve enters the pool and tightens both bounds at every
//! other query point for free; no resampling is required.

use crate::sample::SampleSet;
use lpcore::{dot, solve_lp, LpBuilder, Sense, SolveStatus, ToleranceConfig};

/// A certified lower bound together with a subgradient valid at the query.
#[derive(Clone, Debug)]
pub struct LowerBound {
    pub value: f64,
    pub gradient: Vec<f64>,
}

/// Best lower bound on `v(x, c)` supported by the pool.
///
/// Maximises `Σ μ_j (value_j + x_grad_jᵀ (x − x_j))` over `μ ≥ 0` subject to
/// `Σ μ_j c_j ≤ c` componentwise. Any feasible `μ` certifies a bound:
/// mixing the supporting planes bounds `v(x, Σ μ_j c_j)` from below, and the
/// budget rows plus monotonicity in `c` lift it to `v(x, c)`. The optimal
/// mixture's plane `Σ μ_j x_grad_j` is a subgradient of the bound at `x`.
///
/// The origin sample is excluded: its cost point is zero, so it never uses
/// any budget and would only add a degenerate ray. When the pool holds no
/// other sample, or the mixing program fails, the configured `floor` is
/// returned with a flat gradient — the caller guarantees the floor holds
/// everywhere.
pub fn lower_bound(
    samples: &SampleSet,
    x: &[f64],
    c: &[f64],
    floor: f64,
    tol: &ToleranceConfig,
) -> LowerBound {
    let flat = || LowerBound { value: floor, gradient: vec![0.0; x.len()] };
    if samples.len() <= 1 {
        return flat();
    }
    let mut b = LpBuilder::new();
    for (j, p) in samples.points.iter().enumerate().skip(1) {
        let plane = p.value + dot(&p.x_grad, x) - dot(&p.x_grad, &p.x);
        // The kernel minimises; negate to maximise the mixed bound.
        b.add_col(format!("mix{j}"), 0.0, f64::INFINITY, -plane);
    }
    for k in 0..c.len() {
        let row = b.add_row(format!("budget{k}"), Sense::Le, c[k]);
        for (col, p) in samples.points.iter().skip(1).enumerate() {
            if p.c[k] != 0.0 {
                b.set(row, col, p.c[k]);
            }
        }
    }
    let sol = match solve_lp(&b.build(), tol) {
        Ok(sol) if sol.status == SolveStatus::Optimal => sol,
        _ => return flat(),
    };
    let value = -sol.objective;
    if value <= floor {
        return flat();
    }
    let mut gradient = vec![0.0; x.len()];
    for (col, p) in samples.points.iter().skip(1).enumerate() {
        let mu = sol.x[col];
        if mu > 0.0 {
            for (g, d) in gradient.iter_mut().zip(&p.x_grad) {
                *g += mu * d;
            }
        }
    }
    LowerBound { value, gradient }
}

/// Best upper bound on `v(x, c)` supported by the pool.
///
/// Minimises `Σ μ_j (value_j + c_grad_jᵀ (c − c_j))` over the simplex
/// `Σ μ_j = 1, μ ≥ 0` subject to `Σ μ_j x_j ≤ x` componentwise. Convexity in
/// `x` bounds `v(Σ μ_j x_j, c)` by the mixture, monotonicity in `x` extends
/// it to the dominating query point, and each sample's plane in `c` caps its
/// own contribution. The origin sample keeps the program feasible for every
/// `x ≥ 0`. The configured `cap` is returned if the program cannot be
/// solved.
pub fn upper_bound(
    samples: &SampleSet,
    x: &[f64],
    c: &[f64],
    cap: f64,
    tol: &ToleranceConfig,
) -> f64 {
    if samples.is_empty() {
        return cap;
    }
    let mut b = LpBuilder::new();
    for (j, p) in samples.points.iter().enumerate() {
        let plane = p.value + dot(&p.c_grad, c) - dot(&p.c_grad, &p.c);
        b.add_col(format!("mix{j}"), 0.0, f64::INFINITY, plane);
    }
    for k in 0..x.len() {
        let any = samples.points.iter().any(|p| p.x[k] != 0.0);
        if !any && x[k] >= 0.0 {
            continue;
        }
        let row = b.add_row(format!("dominate{k}"), Sense::Le, x[k]);
        for (j, p) in samples.points.iter().enumerate() {
            if p.x[k] != 0.0 {
                b.set(row, j, p.x[k]);
            }
        }
    }
    let convex = b.add_row("convex", Sense::Eq, 1.0);
    for j in 0..samples.len() {
        b.set(convex, j, 1.0);
    }
    match solve_lp(&b.build(), tol) {
        Ok(sol) if sol.status == SolveStatus::Optimal => sol.objective.min(cap),
        _ => cap,
    }
}
