//! Random multi-horizon instance generator.
//!
//! Instances follow a capacity-expansion pattern: investment nodes build
//! technology capacity (with binary build triggers and fixed costs),
//! accumulation rows carry capacity down the tree, and operational nodes
//! dispatch against scenario demand with load shedding and free spill.
//! Per-node scalars — demand reduction, emission budget, carbon price —
//! give every operational node a distinct strategic vector and cost point.
//!
//! Construction guarantees the properties the decomposition algorithms
//! rely on: the subproblem value is nonincreasing in every strategic
//! component (capacity, demand reduction, emission budget), all cost rows
//! are nonnegative, and shedding keeps every subproblem feasible.

use crate::problem::{MHSPProblem, ScenarioBlock, StrategicBlock};
use crate::tree::{NodeKind, StrategicNode, StrategicTree};
use lpcore::{Matrix, Sense};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct GeneratorConfig {
    /// Number of investment stages (tree levels with investment nodes).
    pub stages: usize,
    /// Children per investment node at each transition; length `stages-1`.
    pub branching: Vec<usize>,
    pub technologies: usize,
    /// Periods per operational scenario.
    pub periods: usize,
    pub scenarios: usize,
    /// Total binary budget; build triggers are trimmed to fit it.
    pub max_binaries: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        Self { stages: 2, branching: vec![2], technologies: 2, periods: 3, scenarios: 2, max_binaries: 12 }
    }
}

pub fn random_instance(cfg: &GeneratorConfig, seed: u64) -> MHSPProblem {
    assert!(cfg.stages >= 1 && cfg.branching.len() + 1 == cfg.stages);
    assert!(cfg.technologies >= 1 && cfg.periods >= 1 && cfg.scenarios >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nt = cfg.technologies;

    // Technology economics, shared by every node.
    let build_cost: Vec<f64> = (0..nt).map(|_| rng.random_range(1.0..4.0)).collect();
    let trigger_cost: Vec<f64> = (0..nt).map(|_| rng.random_range(2.0..10.0)).collect();
    let build_max: Vec<f64> = (0..nt).map(|_| rng.random_range(3.0..8.0)).collect();
    let fuel: Vec<f64> = (0..nt).map(|_| rng.random_range(0.5..3.0)).collect();
    let emission: Vec<f64> = (0..nt).map(|_| rng.random_range(0.1..1.0)).collect();
    let shed_penalty = rng.random_range(30.0..60.0);

    // Tree: investment backbone plus one operational leaf per investment
    // node, identifiers in stage order.
    let mut nodes: Vec<StrategicNode> = vec![StrategicNode {
        id: 0,
        kind: NodeKind::Investment,
        ancestor: None,
        stage: 0,
        probability: 1.0,
        scenario_weights: vec![],
    }];
    let weights = vec![1.0 / cfg.scenarios as f64; cfg.scenarios];
    let mut level: Vec<usize> = vec![0];
    for stage in 1..=cfg.stages {
        let mut next = Vec::new();
        for &parent in &level {
            let pprob = nodes[parent].probability;
            let id = nodes.len();
            nodes.push(StrategicNode {
                id,
                kind: NodeKind::Operational,
                ancestor: Some(parent),
                stage,
                probability: pprob,
                scenario_weights: weights.clone(),
            });
            if stage < cfg.stages {
                let fanout = cfg.branching[stage - 1];
                for _ in 0..fanout {
                    let id = nodes.len();
                    nodes.push(StrategicNode {
                        id,
                        kind: NodeKind::Investment,
                        ancestor: Some(parent),
                        stage,
                        probability: pprob / fanout as f64,
                        scenario_weights: vec![],
                    });
                    next.push(id);
                }
            }
        }
        level = next;
    }
    let tree = StrategicTree { nodes };
    let n_inv = tree.investment_ids().len();
    let triggers = (cfg.max_binaries / n_inv).min(nt);

    // Strategic blocks. Investment nodes: build, trigger, accumulation
    // columns; accumulation rows against the ancestor. Operational nodes:
    // capacity columns pinned to the ancestor's accumulation, plus fixed
    // demand-reduction and emission-budget scalars.
    let acc_off = nt + triggers; // start of the acc block inside an investment node
    let x_dim = nt + 2;
    let mut strategic: Vec<StrategicBlock> = Vec::with_capacity(tree.len());
    let mut cost_points: Vec<Option<Vec<f64>>> = Vec::with_capacity(tree.len());
    for node in &tree.nodes {
        match node.kind {
            NodeKind::Investment => {
                let mut block = StrategicBlock::default();
                for t in 0..nt {
                    block.col_names.push(format!("build{t}"));
                    block.cost.push(build_cost[t]);
                    block.lower.push(0.0);
                    block.upper.push(build_max[t]);
                }
                for t in 0..triggers {
                    block.binary.push(block.cost.len());
                    block.col_names.push(format!("on{t}"));
                    block.cost.push(trigger_cost[t]);
                    block.lower.push(0.0);
                    block.upper.push(1.0);
                }
                for t in 0..nt {
                    block.col_names.push(format!("acc{t}"));
                    block.cost.push(0.0);
                    block.lower.push(0.0);
                    block.upper.push(f64::INFINITY);
                }
                let width = block.cost.len();
                let anc_width = node.ancestor.map_or(0, |_| width);
                let rows = nt + triggers;
                let mut w = Matrix::zeros(rows, width);
                let mut tm = Matrix::zeros(rows, anc_width);
                for t in 0..nt {
                    // acc_t - build_t - acc_t(ancestor) = 0
                    w.set(t, acc_off + t, 1.0);
                    w.set(t, t, -1.0);
                    if node.ancestor.is_some() {
                        tm.set(t, acc_off + t, -1.0);
                    }
                    block.link_senses.push(Sense::Eq);
                    block.link_rhs.push(0.0);
                }
                for t in 0..triggers {
                    // build_t <= build_max_t * trigger_t
                    w.set(nt + t, t, 1.0);
                    w.set(nt + t, nt + t, -build_max[t]);
                    block.link_senses.push(Sense::Le);
                    block.link_rhs.push(0.0);
                }
                block.link_w = w;
                block.link_t = tm;
                strategic.push(block);
                cost_points.push(None);
            }
            NodeKind::Operational => {
                let mut block = StrategicBlock::default();
                for t in 0..nt {
                    block.col_names.push(format!("cap{t}"));
                    block.cost.push(0.0);
                    block.lower.push(0.0);
                    block.upper.push(f64::INFINITY);
                }
                let reduction = rng.random_range(0.0..0.4);
                block.col_names.push("dred".into());
                block.cost.push(0.0);
                block.lower.push(reduction);
                block.upper.push(reduction);
                let budget = rng.random_range(0.5..1.5) * cfg.periods as f64;
                block.col_names.push("ebud".into());
                block.cost.push(0.0);
                block.lower.push(budget);
                block.upper.push(budget);

                // cap_t = acc_t(ancestor investment node)
                let anc_width = strategic[node.ancestor.unwrap()].width();
                let mut w = Matrix::zeros(nt, x_dim);
                let mut tm = Matrix::zeros(nt, anc_width);
                for t in 0..nt {
                    w.set(t, t, 1.0);
                    tm.set(t, acc_off + t, -1.0);
                    block.link_senses.push(Sense::Eq);
                    block.link_rhs.push(0.0);
                }
                block.link_w = w;
                block.link_t = tm;
                strategic.push(block);
                let tax = rng.random_range(0.0..2.0);
                cost_points.push(Some(vec![1.0, tax]));
            }
        }
    }

    // Shared scenario template: per period a balance row with shedding
    // and spill, per technology-period a capacity row, and one emission
    // budget row per scenario.
    let np = cfg.periods;
    let y_dim = nt * np + 2 * np;
    let shed_at = nt * np;
    let spill_at = nt * np + np;
    let mut template = Vec::with_capacity(cfg.scenarios);
    for _ in 0..cfg.scenarios {
        let demand: Vec<f64> = (0..np).map(|_| rng.random_range(1.0..5.0)).collect();
        let rows = np + nt * np + 1;
        let mut w = Matrix::zeros(rows, y_dim);
        let mut tm = Matrix::zeros(rows, x_dim);
        let mut senses = Vec::with_capacity(rows);
        let mut rhs = Vec::with_capacity(rows);
        for p in 0..np {
            // sum_t gen[t][p] + shed[p] - spill[p] = demand[p] * (1 - dred)
            for t in 0..nt {
                w.set(p, t * np + p, 1.0);
            }
            w.set(p, shed_at + p, 1.0);
            w.set(p, spill_at + p, -1.0);
            tm.set(p, nt, demand[p]);
            senses.push(Sense::Eq);
            rhs.push(demand[p]);
        }
        for t in 0..nt {
            for p in 0..np {
                // gen[t][p] <= cap_t
                let r = np + t * np + p;
                w.set(r, t * np + p, 1.0);
                tm.set(r, t, -1.0);
                senses.push(Sense::Le);
                rhs.push(0.0);
            }
        }
        // sum_{t,p} e_t gen[t][p] <= ebud
        let r = np + nt * np;
        for t in 0..nt {
            for p in 0..np {
                w.set(r, t * np + p, emission[t]);
            }
        }
        tm.set(r, nt + 1, -1.0);
        senses.push(Sense::Le);
        rhs.push(0.0);

        let mut cost_rows = Matrix::zeros(2, y_dim);
        let mut y_names = Vec::with_capacity(y_dim);
        for t in 0..nt {
            for p in 0..np {
                cost_rows.set(0, t * np + p, fuel[t]);
                cost_rows.set(1, t * np + p, emission[t]);
                y_names.push(format!("gen{t}p{p}"));
            }
        }
        for p in 0..np {
            cost_rows.set(0, shed_at + p, shed_penalty);
            y_names.push(format!("shed{p}"));
        }
        for p in 0..np {
            y_names.push(format!("spill{p}"));
        }
        template.push(ScenarioBlock {
            weight: 1.0 / cfg.scenarios as f64,
            t: tm,
            w,
            senses,
            rhs,
            cost_rows,
            y_names,
            y_lower: vec![0.0; y_dim],
            y_upper: vec![f64::INFINITY; y_dim],
        });
    }

    let problem = MHSPProblem { tree, strategic, template, cost_dim: 2, cost_points };
    debug_assert!(problem.validate().is_ok(), "{:?}", problem.validate());
    problem
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_instances_validate() {
        for seed in 0..10 {
            let cfg = GeneratorConfig::default();
            let problem = random_instance(&cfg, seed);
            problem.validate().unwrap();
            assert_eq!(problem.tree.operational_ids().len(), 3);
        }
    }

    #[test]
    fn three_stage_shape() {
        let cfg = GeneratorConfig {
            stages: 3,
            branching: vec![2, 2],
            ..GeneratorConfig::default()
        };
        let problem = random_instance(&cfg, 7);
        problem.validate().unwrap();
        assert_eq!(problem.tree.investment_ids().len(), 1 + 2 + 4);
        assert_eq!(problem.tree.operational_ids().len(), 1 + 2 + 4);
    }
}
