//! Strategic node trees for multi-horizon planning.
//!
//! Investment nodes carry decisions and branch into later stages;
//! operational nodes hang off their investment ancestor as leaves and embed
//! the short-term scenarios. Probabilities are stored unconditionally, so
//! they must sum to one within every (kind, stage) group.

use crate::error::MhspError;
use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Investment,
    Operational,
}

impl NodeKind {
    fn label(self) -> &'static str {
        match self {
            NodeKind::Investment => "investment",
            NodeKind::Operational => "operational",
        }
    }
}

#[derive(Clone, Debug)]
pub struct StrategicNode {
    /// Dense identifier equal to the node's index, assigned in
    /// breadth-first stage order.
    pub id: usize,
    pub kind: NodeKind,
    /// Ancestor identifier; the root has none.
    pub ancestor: Option<usize>,
    pub stage: usize,
    /// Unconditional probability of reaching this node.
    pub probability: f64,
    /// Weights of the embedded operational scenarios; empty for
    /// investment nodes.
    pub scenario_weights: Vec<f64>,
}

#[derive(Clone, Debug, Default)]
pub struct StrategicTree {
    pub nodes: Vec<StrategicNode>,
}

/// Outcome of tree validation: empty means the tree is well-formed.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl StrategicTree {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn children(&self, id: usize) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.ancestor == Some(id)).map(|n| n.id).collect()
    }

    /// Identifiers from `id` back to the root, inclusive. Stops early on a
    /// cycle; validation reports those separately.
    pub fn path_to_root(&self, id: usize) -> Vec<usize> {
        let mut path = vec![id];
        let mut at = id;
        while let Some(up) = self.nodes[at].ancestor {
            if up >= self.nodes.len() || path.len() > self.nodes.len() {
                break;
            }
            path.push(up);
            at = up;
        }
        path
    }

    pub fn investment_ids(&self) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Investment).map(|n| n.id).collect()
    }

    pub fn operational_ids(&self) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.kind == NodeKind::Operational).map(|n| n.id).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let mut push = |msg: String| report.violations.push(msg);
        let n = self.nodes.len();
        if n == 0 {
            push("tree has no nodes".into());
            return report;
        }

        for (idx, node) in self.nodes.iter().enumerate() {
            if node.id != idx {
                push(format!("node at index {idx} carries identifier {}", node.id));
            }
            if let Some(a) = node.ancestor {
                if a >= n {
                    push(format!("node {idx}: ancestor {a} does not exist"));
                } else if self.nodes[a].stage + 1 != node.stage {
                    push(format!(
                        "node {idx}: stage {} does not follow ancestor stage {}",
                        node.stage, self.nodes[a].stage
                    ));
                }
            }
            if !(node.probability > 0.0 && node.probability <= 1.0) {
                push(format!("node {idx}: probability {} outside (0, 1]", node.probability));
            }
            match node.kind {
                NodeKind::Investment => {
                    if !node.scenario_weights.is_empty() {
                        push(format!("node {idx}: investment node carries scenario weights"));
                    }
                }
                NodeKind::Operational => {
                    if node.scenario_weights.is_empty() {
                        push(format!("node {idx}: operational node without scenario weights"));
                    } else {
                        let total: f64 = node.scenario_weights.iter().sum();
                        if node.scenario_weights.iter().any(|w| *w < 0.0) {
                            push(format!("node {idx}: negative scenario weight"));
                        }
                        if (total - 1.0).abs() > 1e-9 {
                            push(format!("node {idx}: scenario weights sum to {total}"));
                        }
                    }
                    if self.nodes.iter().any(|m| m.ancestor == Some(node.id)) {
                        push(format!("node {idx}: operational node has successors"));
                    }
                }
            }
        }

        let roots: Vec<usize> =
            self.nodes.iter().filter(|m| m.ancestor.is_none()).map(|m| m.id).collect();
        if roots.len() != 1 {
            push(format!("tree has {} roots", roots.len()));
        }
        for node in &self.nodes {
            let path = self.path_to_root(node.id);
            let last = *path.last().unwrap();
            if self.nodes[last].ancestor.is_some() {
                push(format!("node {}: ancestry does not reach a root", node.id));
            }
        }

        // Unconditional probabilities must sum to one within every
        // populated (kind, stage) group.
        let max_stage = self.nodes.iter().map(|m| m.stage).max().unwrap_or(0);
        for kind in [NodeKind::Investment, NodeKind::Operational] {
            for stage in 0..=max_stage {
                let total: f64 = self
                    .nodes
                    .iter()
                    .filter(|m| m.kind == kind && m.stage == stage)
                    .map(|m| m.probability)
                    .sum();
                if total != 0.0 && (total - 1.0).abs() > 1e-9 {
                    push(format!(
                        "{} probabilities at stage {stage} sum to {total}",
                        kind.label()
                    ));
                }
            }
        }

        // Every investment node below the last investment stage must
        // continue somewhere.
        let last_inv_stage = self
            .nodes
            .iter()
            .filter(|m| m.kind == NodeKind::Investment)
            .map(|m| m.stage)
            .max()
            .unwrap_or(0);
        for node in &self.nodes {
            if node.kind == NodeKind::Investment
                && node.stage < last_inv_stage
                && !self.nodes.iter().any(|m| m.ancestor == Some(node.id))
            {
                push(format!("node {}: investment node has no successor", node.id));
            }
        }

        report
    }

    /// Serialize to the columnar text schema:
    /// `id kind ancestor stage probability weight...` per line, `-` for the
    /// root's ancestor, `#` comments.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# id kind ancestor stage probability scenario-weights\n");
        for n in &self.nodes {
            let anc = n.ancestor.map_or("-".to_string(), |a| a.to_string());
            let _ = write!(out, "{} {} {} {} {}", n.id, n.kind.label(), anc, n.stage, n.probability);
            for w in &n.scenario_weights {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, MhspError> {
        let mut nodes = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let mut field = |name: &str| {
                it.next().ok_or_else(|| MhspError::Parse {
                    line: lineno + 1,
                    message: format!("missing field `{name}`"),
                })
            };
            let id: usize = parse(field("id")?, lineno, "id")?;
            let kind = match field("kind")? {
                "investment" => NodeKind::Investment,
                "operational" => NodeKind::Operational,
                other => {
                    return Err(MhspError::Parse {
                        line: lineno + 1,
                        message: format!("unknown node kind `{other}`"),
                    })
                }
            };
            let ancestor = match field("ancestor")? {
                "-" => None,
                s => Some(parse(s, lineno, "ancestor")?),
            };
            let stage: usize = parse(field("stage")?, lineno, "stage")?;
            let probability: f64 = parse(field("probability")?, lineno, "probability")?;
            let scenario_weights: Vec<f64> = it
                .map(|s| parse(s, lineno, "scenario weight"))
                .collect::<Result<_, _>>()?;
            nodes.push(StrategicNode { id, kind, ancestor, stage, probability, scenario_weights });
        }
        Ok(Self { nodes })
    }
}

fn parse<T: std::str::FromStr>(s: &str, lineno: usize, what: &str) -> Result<T, MhspError> {
    s.parse().map_err(|_| MhspError::Parse {
        line: lineno + 1,
        message: format!("cannot read {what} from `{s}`"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_stage() -> StrategicTree {
        StrategicTree {
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
                    probability: 0.5,
                    scenario_weights: vec![0.5, 0.5],
                },
                StrategicNode {
                    id: 2,
                    kind: NodeKind::Operational,
                    ancestor: Some(0),
                    stage: 1,
                    probability: 0.5,
                    scenario_weights: vec![1.0],
                },
            ],
        }
    }

    #[test]
    fn normalized_tree_passes() {
        assert!(two_stage().validate().is_ok());
    }

    #[test]
    fn stage_probability_violation_is_reported() {
        let mut tree = two_stage();
        tree.nodes[1].probability = 0.6;
        tree.nodes[2].probability = 0.6;
        let report = tree.validate();
        assert!(report.violations.iter().any(|v| v.contains("stage 1")));
    }

    #[test]
    fn ancestor_cycle_is_reported() {
        let mut tree = two_stage();
        tree.nodes[0].ancestor = Some(1); // two-cycle between 0 and 1
        let report = tree.validate();
        assert!(!report.is_ok());
    }

    #[test]
    fn text_round_trip() {
        let tree = two_stage();
        let text = tree.to_text();
        let back = StrategicTree::from_text(&text).unwrap();
        assert_eq!(back.nodes.len(), tree.nodes.len());
        for (a, b) in tree.nodes.iter().zip(&back.nodes) {
            assert_eq!(a.id, b.id);
            assert_eq!(a.kind, b.kind);
            assert_eq!(a.ancestor, b.ancestor);
            assert_eq!(a.stage, b.stage);
            assert_eq!(a.probability, b.probability);
            assert_eq!(a.scenario_weights, b.scenario_weights);
        }
    }

    #[test]
    fn malformed_line_names_its_position() {
        let err = StrategicTree::from_text("0 investment - 0 1.0\n1 weird 0 1 0.5").unwrap_err();
        match err {
            MhspError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
