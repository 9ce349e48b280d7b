//! The multi-horizon problem container.
//!
//! Every node owns a block of strategic columns linked to its ancestor's
//! block by affine rows. Operational nodes additionally embed short-term
//! scenarios; all of them share one scenario template and differ only in
//! which strategic columns feed the right-hand sides and in the cost point
//! applied to the template's cost rows. That sharing is what lets solve
//! samples transfer between nodes later, so it is enforced here rather
//! than left to convention.

use crate::error::MhspError;
use crate::tree::{NodeKind, StrategicTree};
use lpcore::{Matrix, Sense};

/// Strategic variable block of a single node.
#[derive(Clone, Debug, Default)]
pub struct StrategicBlock {
    pub col_names: Vec<String>,
    pub cost: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    /// Local indices of binary columns.
    pub binary: Vec<usize>,
    /// Linking rows `W x_self + T x_ancestor {sense} h`. `link_t` has zero
    /// columns at the root.
    pub link_w: Matrix,
    pub link_t: Matrix,
    pub link_senses: Vec<Sense>,
    pub link_rhs: Vec<f64>,
}

impl StrategicBlock {
    pub fn width(&self) -> usize {
        self.cost.len()
    }
}

/// One short-term scenario of the shared operational template.
///
/// The scenario binds to a node's strategic columns `x` as
/// `W y {sense} h − T x`, and its objective is `(cᵀ R) y` where `R` is
/// `cost_rows` and `c` the node's cost point.
#[derive(Clone, Debug)]
pub struct ScenarioBlock {
    pub weight: f64,
    pub t: Matrix,
    pub w: Matrix,
    pub senses: Vec<Sense>,
    pub rhs: Vec<f64>,
    pub cost_rows: Matrix,
    pub y_names: Vec<String>,
    pub y_lower: Vec<f64>,
    pub y_upper: Vec<f64>,
}

impl ScenarioBlock {
    pub fn y_dim(&self) -> usize {
        self.w.cols()
    }

    /// Effective objective coefficients on `y` for a given cost point.
    pub fn objective_for(&self, cost_point: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.cost_rows.cols()];
        for k in 0..self.cost_rows.rows() {
            let ck = cost_point[k];
            if ck != 0.0 {
                for j in 0..self.cost_rows.cols() {
                    out[j] += ck * self.cost_rows.get(k, j);
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct MHSPProblem {
    pub tree: StrategicTree,
    /// Strategic block per node, indexed by node id.
    pub strategic: Vec<StrategicBlock>,
    /// Shared scenario template; weights must match the operational
    /// nodes' scenario weights.
    pub template: Vec<ScenarioBlock>,
    /// Dimension of the cost points applied to the template's cost rows.
    pub cost_dim: usize,
    /// Cost point per node: present exactly for operational nodes.
    pub cost_points: Vec<Option<Vec<f64>>>,
}

impl MHSPProblem {
    /// Structural consistency: dimensions, references, template sharing.
    pub fn validate(&self) -> Result<(), MhspError> {
        let report = self.tree.validate();
        if !report.is_ok() {
            return Err(MhspError::Tree(report.violations.join("; ")));
        }
        let n = self.tree.len();
        if self.strategic.len() != n || self.cost_points.len() != n {
            return Err(MhspError::Dimension(format!(
                "{} nodes but {} strategic blocks and {} cost points",
                n,
                self.strategic.len(),
                self.cost_points.len()
            )));
        }
        let weight_total: f64 = self.template.iter().map(|s| s.weight).sum();
        if !self.template.is_empty() && (weight_total - 1.0).abs() > 1e-9 {
            return Err(MhspError::Dimension(format!(
                "template scenario weights sum to {weight_total}"
            )));
        }

        let x_dim = self.operational_x_dim();
        for node in &self.tree.nodes {
            let block = &self.strategic[node.id];
            let w = block.width();
            for (name, len) in [
                ("col_names", block.col_names.len()),
                ("lower", block.lower.len()),
                ("upper", block.upper.len()),
            ] {
                if len != w {
                    return Err(MhspError::Dimension(format!(
                        "node {}: {name} length {len} next to {w} costs",
                        node.id
                    )));
                }
            }
            if block.binary.iter().any(|&j| j >= w) {
                return Err(MhspError::Dimension(format!(
                    "node {}: binary marker beyond block width",
                    node.id
                )));
            }
            let rows = block.link_rhs.len();
            if block.link_senses.len() != rows
                || block.link_w.rows() != rows
                || (rows > 0 && block.link_w.cols() != w)
            {
                return Err(MhspError::Dimension(format!(
                    "node {}: linking rows are inconsistent",
                    node.id
                )));
            }
            match node.ancestor {
                None => {
                    if rows > 0 && block.link_t.cols() != 0 {
                        return Err(MhspError::Dimension(format!(
                            "node {}: root linking rows reference an ancestor",
                            node.id
                        )));
                    }
                }
                Some(a) => {
                    if rows > 0
                        && (block.link_t.rows() != rows
                            || block.link_t.cols() != self.strategic[a].width())
                    {
                        return Err(MhspError::Dimension(format!(
                            "node {}: ancestor linking block does not match node {a}",
                            node.id
                        )));
                    }
                }
            }

            match (&node.kind, &self.cost_points[node.id]) {
                (NodeKind::Operational, Some(c)) => {
                    if c.len() != self.cost_dim {
                        return Err(MhspError::Dimension(format!(
                            "node {}: cost point has dimension {} instead of {}",
                            node.id,
                            c.len(),
                            self.cost_dim
                        )));
                    }
                    if w != x_dim {
                        return Err(MhspError::Dimension(format!(
                            "node {}: operational block width {w} differs from shared {x_dim}",
                            node.id
                        )));
                    }
                    if node.scenario_weights.len() != self.template.len() {
                        return Err(MhspError::Dimension(format!(
                            "node {}: {} scenario weights for {} template scenarios",
                            node.id,
                            node.scenario_weights.len(),
                            self.template.len()
                        )));
                    }
                    for (s, (a, b)) in
                        node.scenario_weights.iter().zip(self.template.iter()).enumerate()
                    {
                        if (a - b.weight).abs() > 1e-9 {
                            return Err(MhspError::Dimension(format!(
                                "node {}: scenario {s} weight {a} differs from template {}",
                                node.id, b.weight
                            )));
                        }
                    }
                }
                (NodeKind::Operational, None) => {
                    return Err(MhspError::Dimension(format!(
                        "node {}: operational node without a cost point",
                        node.id
                    )));
                }
                (NodeKind::Investment, Some(_)) => {
                    return Err(MhspError::Dimension(format!(
                        "node {}: investment node carries a cost point",
                        node.id
                    )));
                }
                (NodeKind::Investment, None) => {}
            }
        }

        for (s, block) in self.template.iter().enumerate() {
            let rows = block.rhs.len();
            let y = block.y_dim();
            if block.senses.len() != rows || block.w.rows() != rows || block.t.rows() != rows {
                return Err(MhspError::Dimension(format!("scenario {s}: row counts differ")));
            }
            if block.t.cols() != x_dim {
                return Err(MhspError::Dimension(format!(
                    "scenario {s}: links {} strategic columns, nodes have {x_dim}",
                    block.t.cols()
                )));
            }
            if block.cost_rows.rows() != self.cost_dim || block.cost_rows.cols() != y {
                return Err(MhspError::Dimension(format!(
                    "scenario {s}: cost rows are {}x{}, expected {}x{y}",
                    block.cost_rows.rows(), block.cost_rows.cols(), self.cost_dim
                )));
            }
            if block.y_lower.len() != y || block.y_upper.len() != y || block.y_names.len() != y {
                return Err(MhspError::Dimension(format!(
                    "scenario {s}: y metadata lengths differ from {y}"
                )));
            }
        }
        Ok(())
    }

    /// Width of the operational nodes' shared strategic blocks.
    pub fn operational_x_dim(&self) -> usize {
        self.tree
            .nodes
            .iter()
            .find(|n| n.kind == NodeKind::Operational)
            .map_or(0, |n| self.strategic[n.id].width())
    }
}
