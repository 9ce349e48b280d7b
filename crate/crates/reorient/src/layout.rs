//! Layout of the strategic vector that couples the master to the dispatch
//! subproblems.
//!
//! Every operational node exposes the same vector `x`:
//!
//! ```text
//! [ acc(p)  for every non-target technology p   ]  accumulated capacity
//! [ accret(k) for every retrofit option k       ]  converted capacity
//! [ retired(s) for every retrofit source s      ]  legacy capacity removed
//! [ dred_power, dred_hydrogen, co2_cap          ]  demand relief and budget
//! ```
//!
//! All components are nonnegative and the dispatch cost is nonincreasing in
//! each of them: capacity relaxes bounds, `retired` removes platform loads,
//! the demand-relief entries lower the balances' right-hand sides, and the
//! budget relaxes the emission cap. The all-zero vector is therefore a
//! universal worst case, which the decomposition algorithms rely on when
//! they seed their sample sets.
//!
//! Demand relief is measured against the largest demand scale over the
//! tree's operational nodes: a node with scale `mu` binds
//! `dred = mu_max - mu`, and the scenario template carries `mu_max` times
//! the series in its right-hand side.

use std::collections::BTreeMap;

use crate::data::CaseData;
use mhsp::NodeKind;

/// Column order of the strategic vector.
#[derive(Clone, Debug)]
pub struct XLayout {
    /// Non-target technology ids, case order.
    pub regular: Vec<String>,
    /// Retrofit target ids, option order.
    pub targets: Vec<String>,
    /// Legacy-capacity holders (candidates for conversion or abandonment),
    /// case order.
    pub sources: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl XLayout {
    pub fn new(case: &CaseData) -> Self {
        let regular: Vec<String> = case.regular_ids().iter().map(|s| s.to_string()).collect();
        let targets: Vec<String> = case.target_ids().iter().map(|s| s.to_string()).collect();
        let sources: Vec<String> = case.source_ids().iter().map(|s| s.to_string()).collect();
        let mut index = BTreeMap::new();
        for (i, id) in regular.iter().enumerate() {
            index.insert(format!("acc:{id}"), i);
        }
        for (i, id) in targets.iter().enumerate() {
            index.insert(format!("accret:{id}"), regular.len() + i);
        }
        for (i, id) in sources.iter().enumerate() {
            index.insert(format!("retired:{id}"), regular.len() + targets.len() + i);
        }
        XLayout { regular, targets, sources, index }
    }

    pub fn dim(&self) -> usize {
        self.regular.len() + self.targets.len() + self.sources.len() + 3
    }

    /// Accumulated-capacity slot of a non-target technology.
    pub fn acc(&self, tech: &str) -> Option<usize> {
        self.index.get(&format!("acc:{tech}")).copied()
    }

    /// Converted-capacity slot of a retrofit target.
    pub fn accret(&self, tech: &str) -> Option<usize> {
        self.index.get(&format!("accret:{tech}")).copied()
    }

    /// Removed-legacy-capacity slot of a retrofit source.
    pub fn retired(&self, tech: &str) -> Option<usize> {
        self.index.get(&format!("retired:{tech}")).copied()
    }

    /// The slot that caps a technology's dispatch: its own accumulation for
    /// ordinary entries, the converted capacity for retrofit targets.
    pub fn capacity(&self, tech: &str) -> Option<usize> {
        self.acc(tech).or_else(|| self.accret(tech))
    }

    pub fn dred_power(&self) -> usize {
        self.dim() - 3
    }

    pub fn dred_hydrogen(&self) -> usize {
        self.dim() - 2
    }

    pub fn co2_cap(&self) -> usize {
        self.dim() - 1
    }

    /// Human-readable component names, layout order.
    pub fn names(&self) -> Vec<String> {
        let mut out = Vec::with_capacity(self.dim());
        for id in &self.regular {
            out.push(format!("acc[{id}]"));
        }
        for id in &self.targets {
            out.push(format!("accret[{id}]"));
        }
        for id in &self.sources {
            out.push(format!("retired[{id}]"));
        }
        out.push("dred[power]".into());
        out.push("dred[hydrogen]".into());
        out.push("co2cap".into());
        out
    }
}

/// Reference demand scales: the largest multiplier over operational nodes,
/// against which per-node relief is measured.
#[derive(Clone, Copy, Debug)]
pub struct DemandRefs {
    pub power: f64,
    pub hydrogen: f64,
}

impl DemandRefs {
    pub fn new(case: &CaseData) -> Self {
        let mut power: f64 = 0.0;
        let mut hydrogen: f64 = 0.0;
        for node in &case.tree.nodes {
            if node.kind != NodeKind::Operational {
                continue;
            }
            let econ = case.node_econ[node.id].as_ref().expect("validated");
            power = power.max(econ.demand_power_scale);
            hydrogen = hydrogen.max(econ.demand_hydrogen_scale);
        }
        DemandRefs { power, hydrogen }
    }
}
