//! Restricted master programs: the cut-augmented master MILP and its
//! stabilised centre-point companion.

use lpcore::{
    solve_lp, solve_milp, LinearProgram, LpBuilder, MixedIntegerProgram, Sense, SolveStatus,
    ToleranceConfig,
};
use mhsp::DecomposedProblem;

use crate::error::BendersError;

/// One optimality cut for a node's expected dispatch value: the plane
/// `value + gradientᵀ (x − x₀)` supports the value function from below.
#[derive(Clone, Debug)]
pub struct Cut {
    pub x: Vec<f64>,
    pub value: f64,
    pub gradient: Vec<f64>,
}

impl Cut {
    /// The flat plane at the configured value floor; every pool starts with
    /// it so the master value terms are bounded from the first iteration.
    pub fn floor(x_dim: usize, floor: f64) -> Self {
        Self { x: vec![0.0; x_dim], value: floor, gradient: vec![0.0; x_dim] }
    }
}

/// Append one value column per node (bounded below by the floor, priced at
/// the node weight) and every pooled cut to a copy of the master program.
/// With `priced` off every cost lands at zero — the centring program reads
/// the objective through its level row instead.
fn cut_augmented(
    dec: &DecomposedProblem,
    pools: &[Vec<Cut>],
    floor: f64,
    priced: bool,
) -> (LpBuilder, usize) {
    let lp = &dec.master.lp;
    let mut b = LpBuilder::new();
    for j in 0..lp.num_cols() {
        let cost = if priced { lp.objective[j] } else { 0.0 };
        b.add_col(lp.col_names[j].clone(), lp.lower[j], lp.upper[j], cost);
    }
    for r in 0..lp.num_rows() {
        let row = b.add_row(lp.row_names[r].clone(), lp.senses[r], lp.rhs[r]);
        for j in 0..lp.num_cols() {
            let v = lp.a.get(r, j);
            if v != 0.0 {
                b.set(row, j, v);
            }
        }
    }
    let value_at = lp.num_cols();
    for binding in &dec.nodes {
        let cost = if priced { binding.weight } else { 0.0 };
        b.add_col(format!("opval@n{}", binding.node), floor, f64::INFINITY, cost);
    }
    for (i, (binding, pool)) in dec.nodes.iter().zip(pools).enumerate() {
        for (k, cut) in pool.iter().enumerate() {
            let rhs = cut.value - lpcore::dot(&cut.gradient, &cut.x);
            let row = b.add_row(format!("cut{k}@n{}", binding.node), Sense::Ge, rhs);
            b.set(row, value_at + i, 1.0);
            for (pos, &col) in binding.x_cols.iter().enumerate() {
                if cut.gradient[pos] != 0.0 {
                    b.set(row, col, -cut.gradient[pos]);
                }
            }
        }
    }
    (b, value_at)
}

/// Solution of the restricted master: the full master column values, the
/// master-only cost share, the per-node value column levels, and the bound
/// given by the full objective.
pub(crate) struct MasterPoint {
    pub x: Vec<f64>,
    pub master_cost: f64,
    pub betas: Vec<f64>,
    pub objective: f64,
}

/// Solve the restricted master MILP under the current cut pools.
pub(crate) fn solve_restricted_master(
    dec: &DecomposedProblem,
    pools: &[Vec<Cut>],
    floor: f64,
    tol: &ToleranceConfig,
) -> Result<MasterPoint, BendersError> {
    let (b, value_at) = cut_augmented(dec, pools, floor, true);
    let mip = MixedIntegerProgram::new(b.build(), dec.master.binary.clone());
    let sol = solve_milp(&mip, tol)?;
    match sol.status {
        SolveStatus::Optimal => {}
        SolveStatus::Infeasible => return Err(BendersError::MasterInfeasible),
        SolveStatus::Unbounded => return Err(BendersError::MasterUnbounded),
    }
    let lp = &dec.master.lp;
    let x: Vec<f64> = sol.x[..lp.num_cols()].to_vec();
    let master_cost = objective_share(lp, &x);
    let betas = sol.x[value_at..value_at + dec.nodes.len()].to_vec();
    Ok(MasterPoint { x, master_cost, betas, objective: sol.objective })
}

pub(crate) fn objective_share(lp: &LinearProgram, x: &[f64]) -> f64 {
    lp.objective.iter().zip(x).map(|(c, v)| c * v).sum()
}

/// Centre point of the level set: the most interior point of the master
/// relaxation intersected with the cut pool and a bound on the total cost.
///
/// The radius is measured along the strategic coordinates that have room to
/// move; every inequality (rows, cuts, level row and the strategic bounds)
/// is padded by its sensitivity along those coordinates, so a ball of the
/// reported radius around the centre stays inside all of them. Equality
/// rows pin the centre to their affine slice and take no padding. Returns
/// the master column values and the radius, or `None` when the level-set
/// program cannot be solved — the caller then falls back to the master
/// optimum itself.
pub(crate) fn centre_point(
    dec: &DecomposedProblem,
    pools: &[Vec<Cut>],
    floor: f64,
    level: f64,
    tol: &ToleranceConfig,
) -> Option<(Vec<f64>, f64)> {
    let lp = &dec.master.lp;
    let n_master = lp.num_cols();
    let mut ball = vec![false; n_master];
    for binding in &dec.nodes {
        for &col in &binding.x_cols {
            if lp.lower[col] < lp.upper[col] {
                ball[col] = true;
            }
        }
    }
    let norm_over_ball = |coef: &dyn Fn(usize) -> f64| -> f64 {
        let mut s = 0.0;
        for (j, live) in ball.iter().enumerate() {
            if *live {
                let v = coef(j);
                s += v * v;
            }
        }
        s.sqrt()
    };

    let (mut b, value_at) = cut_augmented(dec, pools, floor, false);
    // Largest finite strategic box extent caps the radius so the program
    // stays bounded even when some strategic coordinate is unbounded above.
    let mut radius_cap: f64 = 1.0;
    for (j, live) in ball.iter().enumerate() {
        if *live && lp.upper[j].is_finite() {
            radius_cap = radius_cap.max(lp.upper[j] - lp.lower[j]);
        }
    }
    let radius = b.add_col("radius", 0.0, radius_cap, -1.0);

    // Pad the copied master rows.
    for r in 0..lp.num_rows() {
        let n = norm_over_ball(&|j| lp.a.get(r, j));
        if n == 0.0 {
            continue;
        }
        match lp.senses[r] {
            Sense::Le => b.set(r, radius, n),
            Sense::Ge => b.set(r, radius, -n),
            Sense::Eq => {}
        }
    }
    // Pad the cut rows (all `Ge`), in the same order they were appended.
    let mut row = lp.num_rows();
    for (binding, pool) in dec.nodes.iter().zip(pools) {
        for cut in pool {
            let mut s = 0.0;
            for (pos, &col) in binding.x_cols.iter().enumerate() {
                if ball[col] {
                    s += cut.gradient[pos] * cut.gradient[pos];
                }
            }
            let n = s.sqrt();
            if n != 0.0 {
                b.set(row, radius, -n);
            }
            row += 1;
        }
    }
    // Level row: total cost at most the level target.
    let level_row = b.add_row("level", Sense::Le, level);
    for j in 0..n_master {
        if lp.objective[j] != 0.0 {
            b.set(level_row, j, lp.objective[j]);
        }
    }
    for (i, binding) in dec.nodes.iter().enumerate() {
        b.set(level_row, value_at + i, binding.weight);
    }
    let n = norm_over_ball(&|j| lp.objective[j]);
    if n != 0.0 {
        b.set(level_row, radius, n);
    }
    // Strategic bounds become padded rows of their own.
    for (j, live) in ball.iter().enumerate() {
        if !*live {
            continue;
        }
        if lp.lower[j].is_finite() {
            let row = b.add_row(format!("ball_lo{j}"), Sense::Ge, lp.lower[j]);
            b.set(row, j, 1.0);
            b.set(row, radius, -1.0);
        }
        if lp.upper[j].is_finite() {
            let row = b.add_row(format!("ball_hi{j}"), Sense::Le, lp.upper[j]);
            b.set(row, j, 1.0);
            b.set(row, radius, 1.0);
        }
    }

    match solve_lp(&b.build(), tol) {
        Ok(sol) if sol.status == SolveStatus::Optimal => {
            let r = sol.x[radius];
            Some((sol.x[..n_master].to_vec(), r))
        }
        _ => None,
    }
}
