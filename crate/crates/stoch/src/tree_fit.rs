//! Scenario-tree construction from simulated price paths.
//!
//! The tree is grown stage by stage: the paths routed through a node are
//! clustered into that node's children with an online (stochastic
//! approximation) pass seeded at the sample quantiles, then hard-assigned
//! and recentred at the cluster means. Node probability is the fraction
//! of all paths routed through the node, so probabilities within a stage
//! always sum to one and stage-wise probability-weighted tree means match
//! the sample means of the routed paths by construction.

use crate::error::StochError;
use mhsp::{NodeKind, StrategicNode, StrategicTree};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// One node of a fitted price tree.
#[derive(Clone, Debug)]
pub struct PriceNode {
    pub id: usize,
    pub ancestor: Option<usize>,
    pub stage: usize,
    /// Unconditional probability of passing through this node.
    pub probability: f64,
    /// One price per commodity.
    pub prices: Vec<f64>,
}

/// A stage-structured tree of commodity prices. Stage 0 may hold several
/// nodes (the fit is a forest until the first stage is deterministic).
#[derive(Clone, Debug)]
pub struct PriceTree {
    pub commodities: usize,
    pub nodes: Vec<PriceNode>,
}

impl PriceTree {
    pub fn stage_ids(&self, stage: usize) -> Vec<usize> {
        self.nodes.iter().filter(|n| n.stage == stage).map(|n| n.id).collect()
    }

    pub fn stage_count(&self) -> usize {
        self.nodes.iter().map(|n| n.stage + 1).max().unwrap_or(0)
    }

    /// Probability-weighted mean price per commodity at one stage.
    pub fn stage_mean(&self, stage: usize) -> Vec<f64> {
        let mut mean = vec![0.0; self.commodities];
        for id in self.stage_ids(stage) {
            let node = &self.nodes[id];
            for (m, p) in mean.iter_mut().zip(&node.prices) {
                *m += node.probability * p;
            }
        }
        mean
    }

    pub fn validate(&self) -> Result<(), StochError> {
        let fail = |msg: String| Err(StochError::Tree(msg));
        if self.nodes.is_empty() {
            return fail("tree has no nodes".into());
        }
        for (idx, node) in self.nodes.iter().enumerate() {
            if node.id != idx {
                return fail(format!("node {idx} carries identifier {}", node.id));
            }
            match node.ancestor {
                None if node.stage != 0 => {
                    return fail(format!("node {idx}: no ancestor but stage {}", node.stage));
                }
                Some(a) => {
                    if a >= self.nodes.len() || self.nodes[a].stage + 1 != node.stage {
                        return fail(format!("node {idx}: bad ancestor {a}"));
                    }
                }
                None => {}
            }
            if node.prices.len() != self.commodities {
                return fail(format!("node {idx}: expected {} prices", self.commodities));
            }
            if node.prices.iter().any(|p| !(p.is_finite() && *p > 0.0)) {
                return fail(format!("node {idx}: prices must be positive"));
            }
            if !(0.0..=1.0 + 1e-12).contains(&node.probability) {
                return fail(format!("node {idx}: probability {}", node.probability));
            }
        }
        for stage in 0..self.stage_count() {
            let ids = self.stage_ids(stage);
            if ids.is_empty() {
                continue;
            }
            let total: f64 = ids.iter().map(|&i| self.nodes[i].probability).sum();
            if (total - 1.0).abs() > 1e-9 {
                return fail(format!("stage {stage}: probabilities sum to {total}"));
            }
        }
        Ok(())
    }
}

/// Wrap scalar paths as single-commodity price paths.
pub fn scalar_paths(paths: &[Vec<f64>]) -> Vec<Vec<Vec<f64>>> {
    paths.iter().map(|p| p.iter().map(|&v| vec![v]).collect()).collect()
}

/// Extend scalar oil paths with an affine gas price per period.
pub fn gas_from_oil(oil: &[Vec<f64>], slope: f64, intercept: f64) -> Vec<Vec<Vec<f64>>> {
    oil.iter()
        .map(|path| path.iter().map(|&p| vec![p, intercept + slope * p]).collect())
        .collect()
}

/// Fit a price tree to simulated paths.
///
/// `paths[p][t]` is the commodity price vector of path `p` at stage `t`;
/// every path must have exactly `branching.len()` stages. Within each
/// sibling group, cluster seeds sit at the sample quantiles, an online
/// pass refines them in seeded random order, and siblings that land on
/// the same point are merged (reported through the returned warnings).
pub fn build_price_tree(
    paths: &[Vec<Vec<f64>>],
    branching: &[usize],
    seed: u64,
) -> Result<(PriceTree, Vec<String>), StochError> {
    if paths.is_empty() {
        return Err(StochError::Data("no paths to fit".into()));
    }
    if branching.is_empty() || branching.contains(&0) {
        return Err(StochError::Params("branching must list positive counts".into()));
    }
    let stages = branching.len();
    let commodities = paths[0].first().map_or(0, Vec::len);
    if commodities == 0 {
        return Err(StochError::Data("paths carry no commodities".into()));
    }
    for (p, path) in paths.iter().enumerate() {
        if path.len() != stages {
            return Err(StochError::Data(format!(
                "path {p} has {} stages, branching lists {stages}",
                path.len()
            )));
        }
        for point in path {
            if point.len() != commodities {
                return Err(StochError::Data(format!("path {p}: inconsistent commodity count")));
            }
            if point.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(StochError::Data(format!("path {p}: prices must be positive")));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = paths.len() as f64;
    let mut nodes: Vec<PriceNode> = Vec::new();
    let mut warnings = Vec::new();

    // Breadth-first work queue keeps identifiers in stage order.
    struct Work {
        parent: Option<usize>,
        stage: usize,
        members: Vec<usize>,
    }
    let mut queue =
        std::collections::VecDeque::from([Work {
            parent: None,
            stage: 0,
            members: (0..paths.len()).collect(),
        }]);

    while let Some(work) = queue.pop_front() {
        let sample: Vec<&[f64]> =
            work.members.iter().map(|&p| paths[p][work.stage].as_slice()).collect();
        let (centers, assignment) =
            cluster(&sample, branching[work.stage], &mut rng);

        // Merge siblings that coincide.
        let mut groups: Vec<(Vec<f64>, Vec<usize>)> = Vec::new(); // center, member paths
        for (j, center) in centers.iter().enumerate() {
            let members: Vec<usize> = assignment
                .iter()
                .enumerate()
                .filter(|&(_, a)| *a == j)
                .map(|(s, _)| work.members[s])
                .collect();
            match groups.iter_mut().find(|(c, _)| same_point(c, center)) {
                Some((_, m)) => m.extend(members),
                None => groups.push((center.clone(), members)),
            }
        }
        if groups.len() < centers.len() {
            warnings.push(format!(
                "stage {}: {} branches over {} distinct values; duplicates merged",
                work.stage,
                centers.len(),
                groups.len()
            ));
        }
        // Deterministic sibling order: by price, lexicographic.
        groups.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

        for (center, members) in groups {
            let id = nodes.len();
            nodes.push(PriceNode {
                id,
                ancestor: work.parent,
                stage: work.stage,
                probability: members.len() as f64 / total,
                prices: center,
            });
            if work.stage + 1 < stages && !members.is_empty() {
                queue.push_back(Work { parent: Some(id), stage: work.stage + 1, members });
            }
        }
    }

    let tree = PriceTree { commodities, nodes };
    tree.validate()?;
    Ok((tree, warnings))
}

fn same_point(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-9 * (1.0 + x.abs().max(y.abs())))
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Cluster a sample into `b` centers: quantile seeding, one online
/// refinement pass in seeded random order, hard assignment, recentring
/// at the assigned means.
fn cluster(sample: &[&[f64]], b: usize, rng: &mut ChaCha8Rng) -> (Vec<Vec<f64>>, Vec<usize>) {
    let m = sample.len();
    assert!(m > 0);

    // Seeds at the quantiles of the lexicographically sorted sample.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&i, &j| sample[i].partial_cmp(sample[j]).unwrap());
    let mut centers: Vec<Vec<f64>> = (0..b)
        .map(|j| {
            let rank = ((j as f64 + 0.5) / b as f64 * m as f64) as usize;
            sample[order[rank.min(m - 1)]].to_vec()
        })
        .collect();

    // Online refinement.
    let mut counts = vec![1.0f64; b];
    let mut visit: Vec<usize> = (0..m).collect();
    for _ in 0..3 {
        visit.shuffle(rng);
        for &s in &visit {
            let j = nearest(&centers, sample[s]);
            counts[j] += 1.0;
            let step = 1.0 / counts[j];
            for (c, v) in centers[j].iter_mut().zip(sample[s]) {
                *c += step * (v - *c);
            }
        }
    }

    // Hard assignment and exact recentring.
    let assignment: Vec<usize> = sample.iter().map(|v| nearest(&centers, v)).collect();
    let dim = sample[0].len();
    let mut sums = vec![vec![0.0f64; dim]; b];
    let mut hits = vec![0usize; b];
    for (s, &j) in assignment.iter().enumerate() {
        hits[j] += 1;
        for (acc, v) in sums[j].iter_mut().zip(sample[s]) {
            *acc += v;
        }
    }
    for j in 0..b {
        if hits[j] > 0 {
            let inv = 1.0 / hits[j] as f64;
            for (c, acc) in centers[j].iter_mut().zip(&sums[j]) {
                *c = acc * inv;
            }
        }
    }
    (centers, assignment)
}

fn nearest(centers: &[Vec<f64>], v: &[f64]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, c) in centers.iter().enumerate() {
        let d = dist2(c, v);
        if d < best_d {
            best_d = d;
            best = j;
        }
    }
    best
}

/// Remove zero-probability nodes and their descendants, relabelling the
/// survivors densely. Idempotent; sibling probabilities are untouched.
pub fn reduce_tree(tree: &PriceTree) -> PriceTree {
    let n = tree.nodes.len();
    let mut keep = vec![false; n];
    let mut by_stage: Vec<usize> = (0..n).collect();
    by_stage.sort_by_key(|&i| tree.nodes[i].stage);
    for &i in &by_stage {
        let node = &tree.nodes[i];
        keep[i] = node.probability > 0.0 && node.ancestor.map_or(true, |a| keep[a]);
    }
    let mut remap = vec![usize::MAX; n];
    let mut nodes = Vec::new();
    for i in 0..n {
        if keep[i] {
            remap[i] = nodes.len();
            let mut node = tree.nodes[i].clone();
            node.id = remap[i];
            node.ancestor = node.ancestor.map(|a| remap[a]);
            nodes.push(node);
        }
    }
    PriceTree { commodities: tree.commodities, nodes }
}

/// Expand a price tree into a strategic tree: every price node becomes an
/// investment node and receives one operational leaf carrying the given
/// scenario weights and the parent's prices. Returns the tree together
/// with the per-strategic-node price vectors (present on operational
/// nodes only).
pub fn to_strategic_tree(
    tree: &PriceTree,
    scenario_weights: &[f64],
) -> Result<(StrategicTree, Vec<Option<Vec<f64>>>), StochError> {
    tree.validate()?;
    if tree.stage_ids(0).len() != 1 {
        return Err(StochError::Tree(format!(
            "stage 0 holds {} nodes; a strategic tree needs a single root",
            tree.stage_ids(0).len()
        )));
    }
    if scenario_weights.is_empty() {
        return Err(StochError::Params("scenario weights must be nonempty".into()));
    }

    let stages = tree.stage_count();
    let mut nodes: Vec<StrategicNode> = Vec::new();
    let mut prices: Vec<Option<Vec<f64>>> = Vec::new();
    let mut strat_of = vec![usize::MAX; tree.nodes.len()];

    for stage in 0..=stages {
        // Operational leaves of the previous stage's investment nodes.
        if stage > 0 {
            for pid in tree.stage_ids(stage - 1) {
                let id = nodes.len();
                nodes.push(StrategicNode {
                    id,
                    kind: NodeKind::Operational,
                    ancestor: Some(strat_of[pid]),
                    stage,
                    probability: tree.nodes[pid].probability,
                    scenario_weights: scenario_weights.to_vec(),
                });
                prices.push(Some(tree.nodes[pid].prices.clone()));
            }
        }
        // Investment nodes of this stage.
        if stage < stages {
            for pid in tree.stage_ids(stage) {
                let id = nodes.len();
                strat_of[pid] = id;
                nodes.push(StrategicNode {
                    id,
                    kind: NodeKind::Investment,
                    ancestor: tree.nodes[pid].ancestor.map(|a| strat_of[a]),
                    stage,
                    probability: tree.nodes[pid].probability,
                    scenario_weights: vec![],
                });
                prices.push(None);
            }
        }
    }

    let strategic = StrategicTree { nodes };
    let report = strategic.validate();
    if !report.violations.is_empty() {
        return Err(StochError::Tree(report.violations.join("; ")));
    }
    Ok((strategic, prices))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn constant_paths(values: &[f64], stages: usize, copies: usize) -> Vec<Vec<Vec<f64>>> {
        let mut out = Vec::new();
        for &v in values {
            for _ in 0..copies {
                out.push(vec![vec![v]; stages]);
            }
        }
        out
    }

    #[test]
    fn point_mass_collapses_to_one_node_per_stage() {
        let paths = constant_paths(&[2.5], 3, 40);
        let (tree, warnings) = build_price_tree(&paths, &[3, 3, 3], 1).unwrap();
        assert!(!warnings.is_empty());
        for stage in 0..3 {
            let ids = tree.stage_ids(stage);
            assert_eq!(ids.len(), 1);
            let node = &tree.nodes[ids[0]];
            assert_relative_eq!(node.probability, 1.0);
            assert_relative_eq!(node.prices[0], 2.5);
        }
    }

    #[test]
    fn two_point_support_splits_evenly() {
        let paths = constant_paths(&[1.0, 3.0], 2, 25);
        let (tree, _) = build_price_tree(&paths, &[2, 2], 5).unwrap();
        for stage in 0..2 {
            let ids = tree.stage_ids(stage);
            assert_eq!(ids.len(), 2);
            let mut values: Vec<f64> = ids.iter().map(|&i| tree.nodes[i].prices[0]).collect();
            values.sort_by(f64::total_cmp);
            assert_relative_eq!(values[0], 1.0);
            assert_relative_eq!(values[1], 3.0);
            for &i in &ids {
                assert_relative_eq!(tree.nodes[i].probability, 0.5);
            }
        }
    }

    #[test]
    fn reduction_removes_subtrees_and_is_idempotent() {
        // Root with a live child and a dead child that has a grandchild.
        let tree = PriceTree {
            commodities: 1,
            nodes: vec![
                PriceNode { id: 0, ancestor: None, stage: 0, probability: 1.0, prices: vec![1.0] },
                PriceNode {
                    id: 1,
                    ancestor: Some(0),
                    stage: 1,
                    probability: 1.0,
                    prices: vec![2.0],
                },
                PriceNode {
                    id: 2,
                    ancestor: Some(0),
                    stage: 1,
                    probability: 0.0,
                    prices: vec![9.0],
                },
                PriceNode {
                    id: 3,
                    ancestor: Some(2),
                    stage: 2,
                    probability: 0.0,
                    prices: vec![9.0],
                },
                PriceNode {
                    id: 4,
                    ancestor: Some(1),
                    stage: 2,
                    probability: 1.0,
                    prices: vec![3.0],
                },
            ],
        };
        let reduced = reduce_tree(&tree);
        assert_eq!(reduced.nodes.len(), 3);
        assert!(reduced.nodes.iter().all(|n| n.probability > 0.0));
        assert_eq!(reduced.nodes[2].ancestor, Some(1));
        let again = reduce_tree(&reduced);
        assert_eq!(again.nodes.len(), reduced.nodes.len());
        reduced.validate().unwrap();
    }

    #[test]
    fn strategic_export_alternates_kinds_and_carries_prices() {
        let paths = constant_paths(&[1.0, 3.0], 2, 10);
        // Deterministic first stage, uncertainty at the second.
        let mut merged = paths;
        for path in &mut merged {
            path[0] = vec![2.0];
        }
        let (tree, _) = build_price_tree(&merged, &[2, 2], 3).unwrap();
        let (strategic, prices) = to_strategic_tree(&tree, &[0.5, 0.5]).unwrap();
        strategic.validate().violations.iter().for_each(|v| panic!("{v}"));
        assert_eq!(strategic.investment_ids().len(), 3);
        assert_eq!(strategic.operational_ids().len(), 3);
        for id in strategic.operational_ids() {
            let parent = strategic.nodes[id].ancestor.unwrap();
            assert_eq!(prices[id].as_ref().unwrap(), prices_of(&tree, &strategic, parent));
        }
        for id in strategic.investment_ids() {
            assert!(prices[id].is_none());
        }
    }

    fn prices_of<'t>(
        tree: &'t PriceTree,
        strategic: &StrategicTree,
        strat_inv_id: usize,
    ) -> &'t Vec<f64> {
        // Recover the price node matching a strategic investment node by
        // stage and probability-ordered position.
        let node = &strategic.nodes[strat_inv_id];
        let inv_at_stage: Vec<usize> = strategic
            .investment_ids()
            .into_iter()
            .filter(|&i| strategic.nodes[i].stage == node.stage)
            .collect();
        let pos = inv_at_stage.iter().position(|&i| i == strat_inv_id).unwrap();
        let ids = tree.stage_ids(node.stage);
        &tree.nodes[ids[pos]].prices
    }
}
