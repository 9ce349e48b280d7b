//! Assembly of the monolithic deterministic equivalent.
//!
//! The flattened program carries every node's strategic columns and one
//! copy of each template scenario per operational node. It is assembled
//! directly from the raw problem data — not through the decomposition
//! path — so the two routes to an optimum stay independent of each other
//! for testing purposes.

use crate::error::MhspError;
use crate::problem::MHSPProblem;
use crate::tree::NodeKind;
use lpcore::{LpBuilder, MixedIntegerProgram};

pub fn deterministic_equivalent(problem: &MHSPProblem) -> Result<MixedIntegerProgram, MhspError> {
    problem.validate()?;
    let mut b = LpBuilder::new();
    let mut binaries = Vec::new();

    // Strategic columns, nodes in identifier order.
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

    // Strategic linking rows against the ancestor block.
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

    // One scenario copy per operational node.
    for node in &problem.tree.nodes {
        if node.kind != NodeKind::Operational {
            continue;
        }
        let cost_point = problem.cost_points[node.id].as_ref().expect("validated");
        for (s, scen) in problem.template.iter().enumerate() {
            let q = scen.objective_for(cost_point);
            let mut y_start = 0usize;
            for j in 0..scen.y_dim() {
                let col = b.add_col(
                    format!("{}@n{}s{s}", scen.y_names[j], node.id),
                    scen.y_lower[j],
                    scen.y_upper[j],
                    node.probability * scen.weight * q[j],
                );
                if j == 0 {
                    y_start = col;
                }
            }
            for r in 0..scen.rhs.len() {
                let row =
                    b.add_row(format!("op{r}@n{}s{s}", node.id), scen.senses[r], scen.rhs[r]);
                for j in 0..scen.t.cols() {
                    b.set(row, x_start[node.id] + j, scen.t.get(r, j));
                }
                for j in 0..scen.w.cols() {
                    b.set(row, y_start + j, scen.w.get(r, j));
                }
            }
        }
    }

    Ok(MixedIntegerProgram::new(b.build(), binaries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{ScenarioBlock, StrategicBlock};
    use crate::tree::{StrategicNode, StrategicTree};
    use lpcore::{Matrix, Sense};

    /// One investment node with two strategic columns and one operational
    /// node with no strategic columns and two three-variable scenarios:
    /// the flattened program has 2 + 2*3 columns.
    #[test]
    fn column_count_matches_by_hand() {
        let tree = StrategicTree {
            nodes: vec![
                StrategicNode {
                    id: 0,
                    kind: NodeKind::Investment,
                    ancestor: None,
                    stage: 0,
                    probability: 1.0,
                    scenario_weights: vec![],
                },
                StrategicNode {
                    id: 1,
                    kind: NodeKind::Operational,
                    ancestor: Some(0),
                    stage: 1,
                    probability: 1.0,
                    scenario_weights: vec![0.5, 0.5],
                },
            ],
        };
        let inv = StrategicBlock {
            col_names: vec!["u".into(), "v".into()],
            cost: vec![1.0, 2.0],
            lower: vec![0.0, 0.0],
            upper: vec![5.0, 5.0],
            binary: vec![],
            link_w: Matrix::zeros(0, 2),
            link_t: Matrix::zeros(0, 0),
            link_senses: vec![],
            link_rhs: vec![],
        };
        let op = StrategicBlock::default();
        let scen = |weight: f64| ScenarioBlock {
            weight,
            t: Matrix::zeros(1, 0),
            w: Matrix::from_rows(&[vec![1.0, 1.0, 1.0]]),
            senses: vec![Sense::Ge],
            rhs: vec![1.0],
            cost_rows: Matrix::from_rows(&[vec![1.0, 2.0, 3.0]]),
            y_names: vec!["a".into(), "b".into(), "c".into()],
            y_lower: vec![0.0; 3],
            y_upper: vec![f64::INFINITY; 3],
        };
        let problem = MHSPProblem {
            tree,
            strategic: vec![inv, op],
            template: vec![scen(0.5), scen(0.5)],
            cost_dim: 1,
            cost_points: vec![None, Some(vec![1.0])],
        };
        let mip = deterministic_equivalent(&problem).unwrap();
        assert_eq!(mip.lp.num_cols(), 2 + 2 * 3);
        assert_eq!(mip.lp.num_rows(), 2);
        assert!(mip.binary.is_empty());
    }
}
