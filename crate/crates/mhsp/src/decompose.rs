//! Split of a multi-horizon problem into a strategic master and per-node
//! operational bindings, the form the decomposition solvers consume.

use crate::error::MhspError;
use crate::problem::{MHSPProblem, ScenarioBlock};
use crate::tree::NodeKind;
use lpcore::{LinearProgram, LpBuilder, MixedIntegerProgram};

/// How one operational node attaches to the master: which master columns
/// form its strategic vector, its probability, and its cost point.
#[derive(Clone, Debug)]
pub struct NodeBinding {
    pub node: usize,
    pub weight: f64,
    pub x_cols: Vec<usize>,
    pub cost_point: Vec<f64>,
}

/// The decomposed problem: a strategic master (without any operational
/// value terms — those are appended by the solving algorithm) and the
/// shared scenario template with per-node bindings.
#[derive(Clone, Debug)]
pub struct DecomposedProblem {
    pub master: MixedIntegerProgram,
    pub nodes: Vec<NodeBinding>,
    pub template: Vec<ScenarioBlock>,
    pub x_dim: usize,
    pub cost_dim: usize,
}

pub fn decompose(problem: &MHSPProblem) -> Result<DecomposedProblem, MhspError> {
    problem.validate()?;
    let mut b = LpBuilder::new();
    let mut binaries = Vec::new();
    let mut x_start = vec![0usize; problem.tree.len()];
    for node in &problem.tree.nodes {
        let block = &problem.strategic[node.id];
        for j in 0..block.width() {
            let col = b.add_col(
                format!("{}@n{}", block.col_names[j], node.id),
                block.lower[j],
                block.upper[j],
                node.probability * block.cost[j],
            );
            if j == 0 {
                x_start[node.id] = col;
            }
        }
        for &j in &block.binary {
            binaries.push(x_start[node.id] + j);
        }
    }
    for node in &problem.tree.nodes {
        let block = &problem.strategic[node.id];
        for r in 0..block.link_rhs.len() {
            let row = b.add_row(
                format!("link{r}@n{}", node.id),
                block.link_senses[r],
                block.link_rhs[r],
            );
            for j in 0..block.link_w.cols() {
                b.set(row, x_start[node.id] + j, block.link_w.get(r, j));
            }
            if let Some(a) = node.ancestor {
                for j in 0..block.link_t.cols() {
                    b.set(row, x_start[a] + j, block.link_t.get(r, j));
                }
            }
        }
    }

    let x_dim = problem.operational_x_dim();
    let nodes = problem
        .tree
        .nodes
        .iter()
        .filter(|n| n.kind == NodeKind::Operational)
        .map(|n| NodeBinding {
            node: n.id,
            weight: n.probability,
            x_cols: (x_start[n.id]..x_start[n.id] + x_dim).collect(),
            cost_point: problem.cost_points[n.id].clone().expect("validated"),
        })
        .collect();

    Ok(DecomposedProblem {
        master: MixedIntegerProgram::new(b.build(), binaries),
        nodes,
        template: problem.template.clone(),
        x_dim,
        cost_dim: problem.cost_dim,
    })
}

/// Instantiate one scenario of the template at a strategic point and cost
/// point: `min (cᵀR) y  s.t.  W y {sense} h − T x`.
pub fn bind_scenario(scen: &ScenarioBlock, x: &[f64], cost_point: &[f64]) -> LinearProgram {
    assert_eq!(x.len(), scen.t.cols(), "strategic vector does not match the template");
    let mut b = LpBuilder::new();
    let q = scen.objective_for(cost_point);
    for j in 0..scen.y_dim() {
        b.add_col(scen.y_names[j].clone(), scen.y_lower[j], scen.y_upper[j], q[j]);
    }
    for r in 0..scen.rhs.len() {
        let mut rhs = scen.rhs[r];
        for j in 0..scen.t.cols() {
            rhs -= scen.t.get(r, j) * x[j];
        }
        let row = b.add_row(format!("r{r}"), scen.senses[r], rhs);
        for j in 0..scen.w.cols() {
            b.set(row, j, scen.w.get(r, j));
        }
    }
    b.build()
}

/// Deterministic equivalent assembled from a decomposed problem: the master
/// program plus one copy of every template scenario per bound operational
/// node, priced at that node's cost point and objective weight. Together
/// with [`decompose`] this gives a second, structurally different route to
/// the monolithic program than [`crate::flatten::deterministic_equivalent`].
pub fn monolith(dec: &DecomposedProblem) -> MixedIntegerProgram {
    let lp = &dec.master.lp;
    let mut b = LpBuilder::new();
    for j in 0..lp.num_cols() {
        b.add_col(lp.col_names[j].clone(), lp.lower[j], lp.upper[j], lp.objective[j]);
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
    for binding in &dec.nodes {
        for (s, scen) in dec.template.iter().enumerate() {
            let q = scen.objective_for(&binding.cost_point);
            let mut y_start = 0usize;
            for j in 0..scen.y_dim() {
                let col = b.add_col(
                    format!("{}@n{}s{s}", scen.y_names[j], binding.node),
                    scen.y_lower[j],
                    scen.y_upper[j],
                    binding.weight * scen.weight * q[j],
                );
                if j == 0 {
                    y_start = col;
                }
            }
            for r in 0..scen.rhs.len() {
                let row = b.add_row(
                    format!("op{r}@n{}s{s}", binding.node),
                    scen.senses[r],
                    scen.rhs[r],
                );
                for j in 0..scen.t.cols() {
                    let v = scen.t.get(r, j);
                    if v != 0.0 {
                        b.set(row, binding.x_cols[j], v);
                    }
                }
                for j in 0..scen.w.cols() {
                    let v = scen.w.get(r, j);
                    if v != 0.0 {
                        b.set(row, y_start + j, v);
                    }
                }
            }
        }
    }
    MixedIntegerProgram::new(b.build(), dec.master.binary.clone())
}
