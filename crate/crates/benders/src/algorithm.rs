//! The decomposition drivers.
//!
//! [`run_standard`] is classic multi-cut Benders: solve the restricted
//! master, evaluate every node's expected dispatch exactly at the proposal,
//! add one cut per node, repeat.
//!
//! [`run_enhanced`] keeps the same master loop but spends exact solves far
//! more carefully. Each iteration solves the master, then builds a *centre
//! point*: the most interior point of the master relaxation whose total
//! cost stays below a level target interpolated between the current bounds.
//! The adaptive oracles bound every node's value at the centre point from
//! both sides; only the node with the widest oracle sandwich is solved
//! exactly, the new sample tightens every other node's bounds for free, and
//! the loop stops as soon as the sandwich is as tight as the certified gap.
//! Cuts are generated from the oracle lower bounds at the centre point, and
//! the upper bound is certified at the master's own (integral) proposal.

use std::time::Instant;

use lpcore::ToleranceConfig;
use mhsp::DecomposedProblem;

use crate::error::BendersError;
use crate::log::{InnerExit, IterationRecord, RunLog, TerminationStatus};
use crate::oracle::{lower_bound, upper_bound, LowerBound};
use crate::rmp::{centre_point, objective_share, solve_restricted_master, Cut};
use crate::sample::{evaluate_exact, SampleSet};

/// Tuning knobs for both drivers. The defaults converge on every bundled
/// model; the tolerances mirror the kernel defaults.
#[derive(Clone, Debug)]
pub struct AlgorithmConfig {
    /// Absolute gap at which a run counts as converged.
    pub epsilon: f64,
    /// Relative gap (scaled by the magnitude of the upper bound); the
    /// effective target is the larger of the two.
    pub epsilon_rel: f64,
    /// Initial level parameter: the level target sits at
    /// `lower + gamma * (upper - lower)`.
    pub gamma: f64,
    /// Certified floor under every node's expected dispatch value
    /// (unweighted). All bundled models have nonnegative dispatch costs, so
    /// zero is valid; instances with negative costs must lower it.
    pub value_floor: f64,
    /// Fallback upper value when the oracles cannot certify anything yet.
    pub value_cap: f64,
    pub max_iterations: usize,
    /// Optional wall-clock budget in seconds.
    pub max_seconds: Option<f64>,
    /// Iterations without bound movement before the level parameter adapts.
    pub stall_limit: usize,
    pub tol: ToleranceConfig,
}

impl Default for AlgorithmConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-6,
            epsilon_rel: 1e-6,
            gamma: 0.5,
            value_floor: 0.0,
            value_cap: 1e12,
            max_iterations: 200,
            max_seconds: None,
            stall_limit: 5,
            tol: ToleranceConfig::default(),
        }
    }
}

impl AlgorithmConfig {
    fn validate(&self) -> Result<(), BendersError> {
        if !(self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(BendersError::Config(format!(
                "level parameter {} outside (0, 1)",
                self.gamma
            )));
        }
        if !self.value_floor.is_finite() || !self.value_cap.is_finite() {
            return Err(BendersError::Config("value floor and cap must be finite".into()));
        }
        if self.value_cap <= self.value_floor {
            return Err(BendersError::Config("value cap must exceed the floor".into()));
        }
        if self.max_iterations == 0 {
            return Err(BendersError::Config("iteration budget must be positive".into()));
        }
        if self.epsilon < 0.0 || self.epsilon_rel < 0.0 {
            return Err(BendersError::Config("gap tolerances must be nonnegative".into()));
        }
        Ok(())
    }

    fn effective_epsilon(&self, upper: f64) -> f64 {
        self.epsilon.max(self.epsilon_rel * upper.abs())
    }
}

/// Outcome of a decomposition run: certified bounds, the incumbent master
/// decision, and the per-iteration log.
#[derive(Clone, Debug)]
pub struct BendersSolution {
    pub status: TerminationStatus,
    /// Best certified upper bound; the objective of the incumbent.
    pub objective: f64,
    /// Best certified lower bound.
    pub lower_bound: f64,
    /// Master column values of the incumbent decision.
    pub x: Vec<f64>,
    pub log: RunLog,
}

impl BendersSolution {
    pub fn gap(&self) -> f64 {
        self.objective - self.lower_bound
    }
}

fn slack(scale: f64) -> f64 {
    1e-6 * (1.0 + scale.abs())
}

/// Strategic coordinates of a master solution, with solver noise snapped
/// away: a capacity of 1e-16 is a zero, and letting it through poisons the
/// scaling of every oracle program the point appears in.
fn strategic_slice(x: &[f64], cols: &[usize]) -> Vec<f64> {
    cols.iter()
        .map(|&c| {
            let v = x[c];
            if v.abs() < 1e-9 {
                0.0
            } else {
                v.max(0.0)
            }
        })
        .collect()
}

/// Decomposition with adaptive value oracles and level-set stabilisation.
pub fn run_enhanced(
    dec: &DecomposedProblem,
    cfg: &AlgorithmConfig,
) -> Result<BendersSolution, BendersError> {
    cfg.validate()?;
    let started = Instant::now();
    let n_nodes = dec.nodes.len();
    let mut samples = SampleSet::bootstrap(&dec.template, dec.x_dim, dec.cost_dim, &cfg.tol)?;
    let mut log = RunLog { exact_solves: 1, ..RunLog::default() };
    let mut pools: Vec<Vec<Cut>> =
        vec![vec![Cut::floor(dec.x_dim, cfg.value_floor)]; n_nodes];
    let mut gamma = cfg.gamma;
    let mut upper_star = cfg.value_cap;
    let mut lower_star = f64::NEG_INFINITY;
    let mut incumbent: Vec<f64> = Vec::new();
    let mut upper_stall = 0usize;
    let mut lower_stall = 0usize;
    let mut status = TerminationStatus::IterationLimit;

    let oracle_pass = |samples: &SampleSet,
                       points: &[Vec<f64>],
                       log: &mut RunLog|
     -> (Vec<LowerBound>, Vec<f64>) {
        let mut lows = Vec::with_capacity(n_nodes);
        let mut highs = Vec::with_capacity(n_nodes);
        for (binding, x) in dec.nodes.iter().zip(points) {
            let lo = lower_bound(samples, x, &binding.cost_point, cfg.value_floor, &cfg.tol);
            let hi = upper_bound(samples, x, &binding.cost_point, cfg.value_cap, &cfg.tol);
            assert!(
                lo.value <= hi + slack(hi),
                "oracle sandwich inverted at node {}: {} > {}",
                binding.node,
                lo.value,
                hi
            );
            lows.push(lo);
            highs.push(hi);
        }
        log.oracle_calls += n_nodes;
        (lows, highs)
    };

    for iteration in 0..cfg.max_iterations {
        let prev_upper = upper_star;
        let prev_lower = lower_star;

        let t = Instant::now();
        let master = solve_restricted_master(dec, &pools, cfg.value_floor, &cfg.tol)?;
        let master_seconds = t.elapsed().as_secs_f64();
        assert!(
            master.objective >= lower_star - slack(lower_star),
            "master bound regressed: {} after {}",
            master.objective,
            lower_star
        );
        lower_star = lower_star.max(master.objective);

        // Centre of the level set between the fresh bound and the incumbent.
        let level = master.objective + gamma * (upper_star - master.objective);
        let t = Instant::now();
        let centred = centre_point(dec, &pools, cfg.value_floor, level, &cfg.tol);
        let centre_seconds = t.elapsed().as_secs_f64();
        let z_centre = centred.map(|(z, _)| z).unwrap_or_else(|| master.x.clone());
        let centre_cost = objective_share(&dec.master.lp, &z_centre);
        let centre_points: Vec<Vec<f64>> =
            dec.nodes.iter().map(|b| strategic_slice(&z_centre, &b.x_cols)).collect();

        let mut oracle_seconds = 0.0;
        let mut exact_seconds = 0.0;
        let t = Instant::now();
        let (mut lows, mut highs) = oracle_pass(&samples, &centre_points, &mut log);
        oracle_seconds += t.elapsed().as_secs_f64();

        let expected =
            |vals: &dyn Fn(usize) -> f64| -> f64 {
                dec.nodes.iter().enumerate().map(|(i, b)| b.weight * vals(i)).sum::<f64>()
            };
        let mut candidate_lower;
        let mut candidate_upper;
        let mut spent = 0usize;
        // Refine at least once per iteration: the exit tests compare the
        // candidate sandwich against the bounds of the *previous* iteration,
        // which the oracles often already match before any new sample — the
        // loop must make progress first and test second.
        let inner_exit = loop {
            // Solve the node whose oracle sandwich is widest; ties go to
            // the earliest node.
            let pick = (0..n_nodes)
                .max_by(|&a, &b| {
                    let ga = highs[a] - lows[a].value;
                    let gb = highs[b] - lows[b].value;
                    ga.partial_cmp(&gb).unwrap().then(b.cmp(&a))
                })
                .expect("at least one node");
            // A closed sandwich means the pool already pins every node at
            // this point; an exact solve here would only duplicate a sample.
            if highs[pick] - lows[pick].value <= slack(highs[pick]) {
                candidate_lower = centre_cost + expected(&|i| lows[i].value);
                candidate_upper = centre_cost + expected(&|i| highs[i]);
                break InnerExit::Tightened;
            }
            let t = Instant::now();
            let point = evaluate_exact(
                &dec.template,
                &centre_points[pick],
                &dec.nodes[pick].cost_point,
                &cfg.tol,
            )?;
            exact_seconds += t.elapsed().as_secs_f64();
            log.exact_solves += 1;
            spent += 1;
            assert!(
                lows[pick].value <= point.value + slack(point.value)
                    && point.value <= highs[pick] + slack(point.value),
                "oracle sandwich missed the exact value at node {}: {} !in [{}, {}]",
                dec.nodes[pick].node,
                point.value,
                lows[pick].value,
                highs[pick]
            );
            samples.push(point);
            let t = Instant::now();
            let pass = oracle_pass(&samples, &centre_points, &mut log);
            oracle_seconds += t.elapsed().as_secs_f64();
            lows = pass.0;
            highs = pass.1;
            candidate_lower = centre_cost + expected(&|i| lows[i].value);
            candidate_upper = centre_cost + expected(&|i| highs[i]);
            if candidate_upper - candidate_lower <= prev_upper - prev_lower {
                break InnerExit::Tightened;
            }
            if candidate_lower >= prev_upper {
                break InnerExit::Rejected;
            }
            if spent >= n_nodes {
                break InnerExit::Exhausted;
            }
        };

        // One cut per node from the oracle lower bounds at the centre point.
        for (pool, (x, lo)) in pools.iter_mut().zip(centre_points.iter().zip(&lows)) {
            pool.push(Cut { x: x.clone(), value: lo.value, gradient: lo.gradient.clone() });
        }

        // Certify the master's own (integral) proposal from above.
        let proposal_points: Vec<Vec<f64>> =
            dec.nodes.iter().map(|b| strategic_slice(&master.x, &b.x_cols)).collect();
        let t = Instant::now();
        let (mut prop_lows, mut prop_highs) = oracle_pass(&samples, &proposal_points, &mut log);
        oracle_seconds += t.elapsed().as_secs_f64();
        let mut proposal_value = master.master_cost + expected(&|i| prop_highs[i]);
        // The pool is sampled at interior centre points, and the upper oracle
        // can only combine samples that fit under the queried decision — a
        // proposal that leaves some capacity at zero admits no such mixture,
        // so certification would stall at the fallback forever. When the
        // certified value fails to improve the incumbent while its sandwich
        // is still loose, one exact evaluation at the proposal's widest node
        // restores progress of the upper bound.
        let certified_gap = expected(&|i| prop_highs[i] - prop_lows[i].value);
        if proposal_value >= upper_star && certified_gap > slack(proposal_value) {
            let pick = (0..n_nodes)
                .max_by(|&a, &b| {
                    let ga = prop_highs[a] - prop_lows[a].value;
                    let gb = prop_highs[b] - prop_lows[b].value;
                    ga.partial_cmp(&gb).unwrap().then(b.cmp(&a))
                })
                .expect("at least one node");
            let t = Instant::now();
            let point = evaluate_exact(
                &dec.template,
                &proposal_points[pick],
                &dec.nodes[pick].cost_point,
                &cfg.tol,
            )?;
            exact_seconds += t.elapsed().as_secs_f64();
            log.exact_solves += 1;
            samples.push(point);
            let t = Instant::now();
            let pass = oracle_pass(&samples, &proposal_points, &mut log);
            oracle_seconds += t.elapsed().as_secs_f64();
            prop_lows = pass.0;
            prop_highs = pass.1;
            proposal_value = master.master_cost + expected(&|i| prop_highs[i]);
        }
        if proposal_value < upper_star {
            upper_star = proposal_value;
            incumbent = master.x.clone();
        }
        // The certifying pass also yields supporting planes at the proposal
        // for free. Whenever one separates the master's own value estimate,
        // keep it — without this the master can re-propose the same point
        // indefinitely once the centre point has nothing new to teach.
        for (i, (pool, lo)) in pools.iter_mut().zip(&prop_lows).enumerate() {
            if lo.value > master.betas[i] + slack(master.betas[i]) {
                pool.push(Cut {
                    x: proposal_points[i].clone(),
                    value: lo.value,
                    gradient: lo.gradient.clone(),
                });
            }
        }
        assert!(
            lower_star <= upper_star + slack(upper_star),
            "bounds crossed: {} > {}",
            lower_star,
            upper_star
        );

        log.iterations.push(IterationRecord {
            iteration,
            lower: lower_star,
            upper: upper_star,
            candidate_lower,
            candidate_upper,
            exact_solves: log.exact_solves,
            oracle_calls: log.oracle_calls,
            gamma,
            inner_exit,
            master_seconds,
            centre_seconds,
            oracle_seconds,
            exact_seconds,
        });

        if upper_star - lower_star <= cfg.effective_epsilon(upper_star) {
            status = TerminationStatus::Converged;
            break;
        }
        if let Some(budget) = cfg.max_seconds {
            if started.elapsed().as_secs_f64() >= budget {
                status = TerminationStatus::TimeLimit;
                break;
            }
        }

        // Level management: a stalled upper bound pulls the level towards
        // the certified lower bound (more centring), a stalled lower bound
        // pushes it back towards the incumbent (more cutting).
        if upper_star < prev_upper - slack(upper_star) {
            upper_stall = 0;
        } else {
            upper_stall += 1;
            if upper_stall >= cfg.stall_limit {
                gamma = (gamma * 0.7).max(0.1);
                upper_stall = 0;
            }
        }
        if lower_star > prev_lower + slack(lower_star) {
            lower_stall = 0;
        } else {
            lower_stall += 1;
            if lower_stall >= cfg.stall_limit {
                gamma = (gamma / 0.7).min(0.9);
                lower_stall = 0;
            }
        }
    }

    Ok(BendersSolution {
        status,
        objective: upper_star,
        lower_bound: lower_star,
        x: incumbent,
        log,
    })
}

/// Classic multi-cut Benders: every iteration evaluates every node exactly
/// at the master proposal.
pub fn run_standard(
    dec: &DecomposedProblem,
    cfg: &AlgorithmConfig,
) -> Result<BendersSolution, BendersError> {
    cfg.validate()?;
    let started = Instant::now();
    let n_nodes = dec.nodes.len();
    let mut log = RunLog::default();
    let mut pools: Vec<Vec<Cut>> =
        vec![vec![Cut::floor(dec.x_dim, cfg.value_floor)]; n_nodes];
    let mut upper_star = cfg.value_cap;
    let mut lower_star = f64::NEG_INFINITY;
    let mut incumbent: Vec<f64> = Vec::new();
    let mut status = TerminationStatus::IterationLimit;

    for iteration in 0..cfg.max_iterations {
        let t = Instant::now();
        let master = solve_restricted_master(dec, &pools, cfg.value_floor, &cfg.tol)?;
        let master_seconds = t.elapsed().as_secs_f64();
        assert!(
            master.objective >= lower_star - slack(lower_star),
            "master bound regressed: {} after {}",
            master.objective,
            lower_star
        );
        lower_star = lower_star.max(master.objective);

        let t = Instant::now();
        let mut proposal_value = master.master_cost;
        for (binding, pool) in dec.nodes.iter().zip(pools.iter_mut()) {
            let x = strategic_slice(&master.x, &binding.x_cols);
            let point = evaluate_exact(&dec.template, &x, &binding.cost_point, &cfg.tol)?;
            proposal_value += binding.weight * point.value;
            pool.push(Cut { x, value: point.value, gradient: point.x_grad });
        }
        let exact_seconds = t.elapsed().as_secs_f64();
        log.exact_solves += n_nodes;
        if proposal_value < upper_star {
            upper_star = proposal_value;
            incumbent = master.x.clone();
        }
        assert!(
            lower_star <= upper_star + slack(upper_star),
            "bounds crossed: {} > {}",
            lower_star,
            upper_star
        );

        log.iterations.push(IterationRecord {
            iteration,
            lower: lower_star,
            upper: upper_star,
            candidate_lower: master.objective,
            candidate_upper: proposal_value,
            exact_solves: log.exact_solves,
            oracle_calls: log.oracle_calls,
            gamma: 0.0,
            inner_exit: InnerExit::FullPass,
            master_seconds,
            centre_seconds: 0.0,
            oracle_seconds: 0.0,
            exact_seconds,
        });

        if upper_star - lower_star <= cfg.effective_epsilon(upper_star) {
            status = TerminationStatus::Converged;
            break;
        }
        if let Some(budget) = cfg.max_seconds {
            if started.elapsed().as_secs_f64() >= budget {
                status = TerminationStatus::TimeLimit;
                break;
            }
        }
    }

    Ok(BendersSolution {
        status,
        objective: upper_star,
        lower_bound: lower_star,
        x: incumbent,
        log,
    })
}
