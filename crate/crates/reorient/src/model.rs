//! Assembly of a complete case into the decomposed form the solvers
//! consume, plus solution read-back helpers for reporting.

use std::collections::BTreeMap;

use crate::data::CaseData;
use crate::error::ReorientError;
use crate::layout::{DemandRefs, XLayout};
use crate::master::build_master;
use crate::subproblem::build_subproblem;
use mhsp::{DecomposedProblem, NodeKind};

/// A case compiled to a master program, per-node bindings, and a shared
/// scenario template.
#[derive(Clone, Debug)]
pub struct CaseModel {
    pub case: CaseData,
    pub dec: DecomposedProblem,
    /// Master column name -> index, for reporting.
    pub columns: BTreeMap<String, usize>,
    pub xlayout: XLayout,
    pub refs: DemandRefs,
}

impl CaseModel {
    pub fn col(&self, name: &str) -> Option<usize> {
        self.columns.get(name).copied()
    }

    /// Value of a named master column in a solution vector.
    pub fn value(&self, solution: &[f64], name: &str) -> Option<f64> {
        self.col(name).map(|idx| solution[idx])
    }

    /// Operational node ids, tree order.
    pub fn operational_nodes(&self) -> Vec<usize> {
        self.case
            .tree
            .nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Operational)
            .map(|n| n.id)
            .collect()
    }

    /// Investment node ids, tree order.
    pub fn investment_nodes(&self) -> Vec<usize> {
        self.case
            .tree
            .nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Investment)
            .map(|n| n.id)
            .collect()
    }
}

/// Compile a case: build the master, the scenario template, and couple
/// them through the shared strategic-vector layout.
pub fn build_model(case: &CaseData) -> Result<CaseModel, ReorientError> {
    let master = build_master(case)?;
    let template = build_subproblem(case)?;
    let x_dim = master.xlayout.dim();
    for block in &template {
        debug_assert_eq!(block.t.cols(), x_dim);
    }
    let dec = DecomposedProblem {
        master: master.mip,
        nodes: master.bindings,
        template,
        x_dim,
        cost_dim: 2,
    };
    Ok(CaseModel {
        case: case.clone(),
        dec,
        columns: master.columns,
        xlayout: master.xlayout,
        refs: master.refs,
    })
}
