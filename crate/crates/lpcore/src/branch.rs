//! Branch and bound over binary columns.
//!
//! Node selection is best-bound once an incumbent exists; before that the
//! search plunges depth-first to find one quickly. Branching picks the most
//! fractional binary (closest to one half, lowest column index on ties).

use crate::problem::{
    LpError, MilpSolution, MixedIntegerProgram, SearchStats, SolveStatus, ToleranceConfig,
};
use crate::simplex::solve_lp;

#[derive(Clone, Debug)]
struct Node {
    id: usize,
    /// Bound overrides accumulated along the path from the root.
    fixes: Vec<(u32, f64, f64)>,
    /// Objective of the parent relaxation: a valid bound for this node.
    bound: f64,
}

pub fn solve_milp(mip: &MixedIntegerProgram, tol: &ToleranceConfig) -> Result<MilpSolution, LpError> {
    mip.validate()?;
    if mip.binary.len() > tol.max_binaries {
        return Err(LpError::BinaryBudget(mip.binary.len(), tol.max_binaries));
    }

    let relax = mip.relaxation();
    let base_lower = relax.lower.clone();
    let base_upper = relax.upper.clone();
    let mut work = relax;

    let mut stats = SearchStats::default();
    let mut open: Vec<Node> = vec![Node { id: 0, fixes: Vec::new(), bound: f64::NEG_INFINITY }];
    let mut next_id = 1usize;
    let mut incumbent: Option<(f64, Vec<f64>)> = None;

    while let Some(pos) = pick(&open, incumbent.is_some()) {
        let node = open.swap_remove(pos);

        // Prune against the incumbent before paying for the relaxation.
        if let Some((inc_obj, _)) = &incumbent {
            if node.bound >= inc_obj - 1e-9 * (1.0 + inc_obj.abs()) {
                continue;
            }
        }

        if stats.nodes >= tol.max_nodes {
            return Err(LpError::NodeBudget(tol.max_nodes));
        }

        work.lower.copy_from_slice(&base_lower);
        work.upper.copy_from_slice(&base_upper);
        for &(j, lo, hi) in &node.fixes {
            work.lower[j as usize] = lo;
            work.upper[j as usize] = hi;
        }

        let sol = solve_lp(&work, tol)?;
        stats.nodes += 1;
        stats.lp_iterations += sol.iterations;

        match sol.status {
            SolveStatus::Infeasible => continue,
            SolveStatus::Unbounded => {
                // Only possible at the root: fixing binaries cannot create an
                // unbounded ray that the parent did not have.
                return Ok(MilpSolution {
                    status: SolveStatus::Unbounded,
                    objective: f64::NEG_INFINITY,
                    x: Vec::new(),
                    best_bound: f64::NEG_INFINITY,
                    stats,
                });
            }
            SolveStatus::Optimal => {}
        }

        if let Some((inc_obj, _)) = &incumbent {
            if sol.objective >= inc_obj - 1e-9 * (1.0 + inc_obj.abs()) {
                continue;
            }
        }

        match most_fractional(&mip.binary, &sol.x, tol.integrality) {
            None => {
                // Integral: new incumbent (we only get here when it improves).
                let mut x = sol.x.clone();
                for &j in &mip.binary {
                    x[j] = x[j].round();
                }
                incumbent = Some((sol.objective, x));
            }
            Some((j, frac)) => {
                stats.branchings += 1;
                let mut zero = node.fixes.clone();
                zero.push((j as u32, 0.0, 0.0));
                let mut one = node.fixes;
                one.push((j as u32, 1.0, 1.0));
                let zero = Node { id: next_id, fixes: zero, bound: sol.objective };
                let one = Node { id: next_id + 1, fixes: one, bound: sol.objective };
                next_id += 2;
                // Plunge toward the rounding of the fractional value: push
                // the preferred child last so depth-first picks it first.
                if frac >= 0.5 {
                    open.push(zero);
                    open.push(one);
                } else {
                    open.push(one);
                    open.push(zero);
                }
            }
        }
    }

    match incumbent {
        Some((objective, x)) => Ok(MilpSolution {
            status: SolveStatus::Optimal,
            objective,
            x,
            best_bound: objective,
            stats,
        }),
        None => Ok(MilpSolution {
            status: SolveStatus::Infeasible,
            objective: f64::NAN,
            x: Vec::new(),
            best_bound: f64::NAN,
            stats,
        }),
    }
}

/// Index into `open` of the node to process next, if any.
fn pick(open: &[Node], have_incumbent: bool) -> Option<usize> {
    if open.is_empty() {
        return None;
    }
    if !have_incumbent {
        // Depth-first plunge: the most recently created node.
        let mut best = 0;
        for (k, n) in open.iter().enumerate() {
            if n.id > open[best].id {
                best = k;
            }
        }
        return Some(best);
    }
    // Best bound, lowest id on ties.
    let mut best = 0;
    for (k, n) in open.iter().enumerate().skip(1) {
        let b = &open[best];
        if n.bound < b.bound - 1e-12 || ((n.bound - b.bound).abs() <= 1e-12 && n.id < b.id) {
            best = k;
        }
    }
    Some(best)
}

/// The binary column whose value is farthest from integral, with its value.
fn most_fractional(binary: &[usize], x: &[f64], int_tol: f64) -> Option<(usize, f64)> {
    let mut best: Option<(f64, usize, f64)> = None;
    for &j in binary {
        let v = x[j];
        let frac = v - v.floor();
        let dist = (v - v.round()).abs();
        if dist <= int_tol {
            continue;
        }
        let score = (frac - 0.5).abs();
        match best {
            Some((s, _, _)) if s <= score => {}
            _ => best = Some((score, j, frac)),
        }
    }
    best.map(|(_, j, f)| (j, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{LpBuilder, Sense};
    use approx::assert_relative_eq;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn knapsack_two_items() {
        // max 5a + 4b s.t. 3a + 2b <= 4 with a, b binary. Taking both
        // violates the weight limit, so the optimum picks a alone: value 5.
        // The relaxation sits at a = 2/3, b = 1, which forces branching.
        let mut b = LpBuilder::new();
        let a = b.add_col("a", 0.0, 1.0, -5.0);
        let bb = b.add_col("b", 0.0, 1.0, -4.0);
        let r = b.add_row("w", Sense::Le, 4.0);
        b.set(r, a, 3.0);
        b.set(r, bb, 2.0);
        let mip = MixedIntegerProgram::new(b.build(), vec![a, bb]);
        let sol = solve_milp(&mip, &tol()).unwrap();
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_relative_eq!(sol.objective, -5.0, max_relative = 1e-9);
        assert_eq!(sol.x[a], 1.0);
        assert_eq!(sol.x[bb], 0.0);
    }

    #[test]
    fn integral_relaxation_needs_no_branching() {
        // Totally unimodular flow-like system: relaxation is already binary.
        let mut b = LpBuilder::new();
        let x1 = b.add_col("x1", 0.0, 1.0, -1.0);
        let x2 = b.add_col("x2", 0.0, 1.0, -2.0);
        let r = b.add_row("choose", Sense::Le, 1.0);
        b.set(r, x1, 1.0);
        b.set(r, x2, 1.0);
        let mip = MixedIntegerProgram::new(b.build(), vec![x1, x2]);
        let sol = solve_milp(&mip, &tol()).unwrap();
        assert_eq!(sol.stats.branchings, 0);
        assert_relative_eq!(sol.objective, -2.0, max_relative = 1e-9);
    }

    #[test]
    fn infeasible_binary_system() {
        // a + b = 1 and a + b = 2 with binaries: infeasible.
        let mut b = LpBuilder::new();
        let a = b.add_col("a", 0.0, 1.0, 1.0);
        let bb = b.add_col("b", 0.0, 1.0, 1.0);
        let r1 = b.add_row("one", Sense::Eq, 1.0);
        b.set(r1, a, 1.0);
        b.set(r1, bb, 1.0);
        let r2 = b.add_row("two", Sense::Eq, 2.0);
        b.set(r2, a, 1.0);
        b.set(r2, bb, 1.0);
        let mip = MixedIntegerProgram::new(b.build(), vec![a, bb]);
        let sol = solve_milp(&mip, &tol()).unwrap();
        assert_eq!(sol.status, SolveStatus::Infeasible);
    }

    #[test]
    fn budget_enforced() {
        let mut b = LpBuilder::new();
        let cols: Vec<usize> = (0..70).map(|j| b.add_col(format!("x{j}"), 0.0, 1.0, 1.0)).collect();
        let mip = MixedIntegerProgram::new(b.build(), cols);
        assert!(matches!(solve_milp(&mip, &tol()), Err(LpError::BinaryBudget(70, 64))));
    }
}
