//! Strategic master program: investment, retrofit, and abandonment
//! decisions on the scenario tree, without the operational value terms
//! (the decomposition algorithms append those as cuts; the monolithic
//! route appends full dispatch blocks).
//!
//! The objective is a single investment-cost variable plus whatever the
//! solving algorithm adds for the operational nodes. The investment-cost
//! variable is pinned by an accounting row that collects, with the tree
//! probabilities:
//!
//! * capacity and trigger costs of builds and retrofits at investment
//!   nodes;
//! * fixed O&M on accumulated, converted, and surviving legacy capacity at
//!   operational nodes, scaled by the years per stage;
//! * forgone production revenue: keeping a legacy asset earns its oil/gas
//!   revenue, so converting or abandoning it adds the remaining revenue of
//!   the affected operational nodes back as a cost.
//!
//! Accumulation rows tie capacities to the builds of ancestor investment
//! nodes that are still within their technical lifetime, retrofit rows
//! gate conversions behind their binaries (a source can be converted once,
//! to a single target), and fixed columns carry each node's demand relief
//! and CO2 budget so the dispatch template can read them from the
//! strategic vector.

use std::collections::BTreeMap;

use crate::data::CaseData;
use crate::error::ReorientError;
use crate::layout::{DemandRefs, XLayout};
use lpcore::{LpBuilder, MixedIntegerProgram, Sense};
use mhsp::{NodeBinding, NodeKind};

/// Master program plus the column directory the reports read.
#[derive(Clone, Debug)]
pub struct MasterModel {
    pub mip: MixedIntegerProgram,
    pub bindings: Vec<NodeBinding>,
    /// Master column name -> index.
    pub columns: BTreeMap<String, usize>,
    pub xlayout: XLayout,
    pub refs: DemandRefs,
}

impl MasterModel {
    pub fn col(&self, name: &str) -> Option<usize> {
        self.columns.get(name).copied()
    }
}

/// Investment-node ancestors of `node` (nearest first), itself included
/// when it is an investment node.
fn investment_ancestors(case: &CaseData, node: usize) -> Vec<usize> {
    case.tree
        .path_to_root(node)
        .into_iter()
        .filter(|&id| case.tree.nodes[id].kind == NodeKind::Investment)
        .collect()
}

pub fn build_master(case: &CaseData) -> Result<MasterModel, ReorientError> {
    case.validate()?;
    let xlayout = XLayout::new(case);
    let refs = DemandRefs::new(case);
    let kappa = case.scalars.years_per_stage;
    let mut b = LpBuilder::new();
    let mut columns: BTreeMap<String, usize> = BTreeMap::new();
    let mut binaries = Vec::new();

    let add = |b: &mut LpBuilder,
                   columns: &mut BTreeMap<String, usize>,
                   name: String,
                   lo: f64,
                   hi: f64,
                   obj: f64| {
        let idx = b.add_col(name.clone(), lo, hi, obj);
        columns.insert(name, idx);
        idx
    };

    // Total investment cost: free, because forgone production revenue can
    // exceed the spend.
    let cinv = add(&mut b, &mut columns, "cinv".into(), f64::NEG_INFINITY, f64::INFINITY, 1.0);

    for node in &case.tree.nodes {
        let i = node.id;
        match node.kind {
            NodeKind::Investment => {
                for id in &xlayout.regular {
                    let tech = case.technology(id).expect("layout ids exist");
                    if tech.max_inv <= 0.0 {
                        continue;
                    }
                    add(&mut b, &mut columns, format!("inv[{id}]@n{i}"), 0.0, tech.max_inv, 0.0);
                    if tech.trigger_cost > 0.0 {
                        let col =
                            add(&mut b, &mut columns, format!("on[{id}]@n{i}"), 0.0, 1.0, 0.0);
                        binaries.push(col);
                    }
                }
                for retro in &case.retrofits {
                    let t = &retro.target;
                    add(
                        &mut b,
                        &mut columns,
                        format!("ret[{t}]@n{i}"),
                        0.0,
                        retro.max_convert,
                        0.0,
                    );
                    let col = add(&mut b, &mut columns, format!("rety[{t}]@n{i}"), 0.0, 1.0, 0.0);
                    binaries.push(col);
                }
                for sid in &xlayout.sources {
                    let col = add(&mut b, &mut columns, format!("refy[{sid}]@n{i}"), 0.0, 1.0, 0.0);
                    binaries.push(col);
                }
            }
            NodeKind::Operational => {
                let econ = case.node_econ[i].as_ref().expect("validated");
                for id in &xlayout.regular {
                    let tech = case.technology(id).expect("layout ids exist");
                    add(&mut b, &mut columns, format!("acc[{id}]@n{i}"), 0.0, tech.max_acc, 0.0);
                }
                for retro in &case.retrofits {
                    let t = &retro.target;
                    add(&mut b, &mut columns, format!("accret[{t}]@n{i}"), 0.0, retro.max_acc, 0.0);
                }
                for sid in &xlayout.sources {
                    let hist = case.technology(sid).expect("layout ids exist").hist_legacy;
                    add(&mut b, &mut columns, format!("accref[{sid}]@n{i}"), 0.0, hist, 0.0);
                    add(&mut b, &mut columns, format!("retired[{sid}]@n{i}"), 0.0, hist, 0.0);
                }
                let dp = refs.power - econ.demand_power_scale;
                add(&mut b, &mut columns, format!("dred[power]@n{i}"), dp, dp, 0.0);
                let dhy = refs.hydrogen - econ.demand_hydrogen_scale;
                add(&mut b, &mut columns, format!("dred[hydrogen]@n{i}"), dhy, dhy, 0.0);
                let cap = econ.emission_budget;
                add(&mut b, &mut columns, format!("co2cap@n{i}"), cap, cap, 0.0);
            }
        }
    }

    // Forgone production revenue per source and investment node: the
    // revenue of operational nodes that would still see the asset active.
    let mut revenue_after: BTreeMap<(String, usize), f64> = BTreeMap::new();
    let mut revenue_total = 0.0;
    for node in &case.tree.nodes {
        if node.kind != NodeKind::Operational {
            continue;
        }
        let econ = case.node_econ[node.id].as_ref().expect("validated");
        let year = kappa * (node.stage.saturating_sub(1) as f64);
        for sid in &xlayout.sources {
            let tech = case.technology(sid).expect("layout ids exist");
            let annual = tech.production_revenue(year, econ.oil_price, econ.gas_price);
            if annual == 0.0 {
                continue;
            }
            let value = case.scalars.profit_share * kappa * node.probability * annual;
            revenue_total += value;
            for j in investment_ancestors(case, node.id) {
                *revenue_after.entry((sid.clone(), j)).or_insert(0.0) += value;
            }
        }
    }

    // Investment-cost accounting row.
    let cost_row = b.add_row("cinv_def", Sense::Eq, -revenue_total);
    b.set(cost_row, cinv, 1.0);
    for node in &case.tree.nodes {
        let i = node.id;
        let pi = node.probability;
        match node.kind {
            NodeKind::Investment => {
                for id in &xlayout.regular {
                    let tech = case.technology(id).expect("layout ids exist");
                    if let Some(&col) = columns.get(&format!("inv[{id}]@n{i}")) {
                        b.set(cost_row, col, -pi * tech.inv_cost);
                    }
                    if let Some(&col) = columns.get(&format!("on[{id}]@n{i}")) {
                        b.set(cost_row, col, -pi * tech.trigger_cost);
                    }
                }
                for retro in &case.retrofits {
                    let t = &retro.target;
                    b.set(cost_row, columns[&format!("ret[{t}]@n{i}")], -pi * retro.cost_var);
                    if retro.cost_trigger > 0.0 {
                        b.set(
                            cost_row,
                            columns[&format!("rety[{t}]@n{i}")],
                            -pi * retro.cost_trigger,
                        );
                    }
                }
                for sid in &xlayout.sources {
                    if let Some(value) = revenue_after.get(&(sid.clone(), i)) {
                        b.set(cost_row, columns[&format!("refy[{sid}]@n{i}")], -value);
                    }
                }
            }
            NodeKind::Operational => {
                for id in &xlayout.regular {
                    let tech = case.technology(id).expect("layout ids exist");
                    if tech.fixed_om > 0.0 {
                        b.set(
                            cost_row,
                            columns[&format!("acc[{id}]@n{i}")],
                            -kappa * pi * tech.fixed_om,
                        );
                    }
                }
                for retro in &case.retrofits {
                    if retro.fixed_om > 0.0 {
                        let t = &retro.target;
                        b.set(
                            cost_row,
                            columns[&format!("accret[{t}]@n{i}")],
                            -kappa * pi * retro.fixed_om,
                        );
                    }
                }
                for sid in &xlayout.sources {
                    let tech = case.technology(sid).expect("layout ids exist");
                    if tech.fixed_om_legacy > 0.0 {
                        b.set(
                            cost_row,
                            columns[&format!("accref[{sid}]@n{i}")],
                            -kappa * pi * tech.fixed_om_legacy,
                        );
                    }
                }
            }
        }
    }

    // Per-node structural rows.
    for node in &case.tree.nodes {
        let i = node.id;
        match node.kind {
            NodeKind::Investment => {
                // Build gating behind the trigger binary.
                for id in &xlayout.regular {
                    let tech = case.technology(id).expect("layout ids exist");
                    if tech.max_inv > 0.0 && tech.trigger_cost > 0.0 {
                        let row = b.add_row(format!("gate[{id}]@n{i}"), Sense::Le, 0.0);
                        b.set(row, columns[&format!("inv[{id}]@n{i}")], 1.0);
                        b.set(row, columns[&format!("on[{id}]@n{i}")], -tech.max_inv);
                    }
                }
                // Conversion gating behind the retrofit binary.
                for retro in &case.retrofits {
                    let t = &retro.target;
                    let row = b.add_row(format!("retcap[{t}]@n{i}"), Sense::Le, 0.0);
                    b.set(row, columns[&format!("ret[{t}]@n{i}")], 1.0);
                    b.set(row, columns[&format!("rety[{t}]@n{i}")], -retro.max_convert);
                }
                // A source converts to at most one target, and only while
                // its own indicator is raised. Sources without retrofit
                // options skip the row: raising their indicator is plain
                // abandonment.
                for sid in &xlayout.sources {
                    if !case.retrofits.iter().any(|r| &r.source == sid) {
                        continue;
                    }
                    let row = b.add_row(format!("target[{sid}]@n{i}"), Sense::Le, 0.0);
                    for retro in case.retrofits.iter().filter(|r| &r.source == sid) {
                        b.set(row, columns[&format!("rety[{}]@n{i}", retro.target)], 1.0);
                    }
                    b.set(row, columns[&format!("refy[{sid}]@n{i}")], -1.0);
                }
            }
            NodeKind::Operational => {
                let ancestors = investment_ancestors(case, i);
                // Accumulated capacity: history plus builds still alive.
                for id in &xlayout.regular {
                    let tech = case.technology(id).expect("layout ids exist");
                    let row = b.add_row(format!("cap[{id}]@n{i}"), Sense::Eq, tech.hist);
                    b.set(row, columns[&format!("acc[{id}]@n{i}")], 1.0);
                    for &j in &ancestors {
                        let age = kappa * (node.stage - case.tree.nodes[j].stage) as f64;
                        if age <= tech.lifetime {
                            if let Some(&col) = columns.get(&format!("inv[{id}]@n{j}")) {
                                b.set(row, col, -1.0);
                            }
                        }
                    }
                }
                // Converted capacity: conversions still alive.
                for retro in &case.retrofits {
                    let t = &retro.target;
                    let row = b.add_row(format!("capret[{t}]@n{i}"), Sense::Eq, 0.0);
                    b.set(row, columns[&format!("accret[{t}]@n{i}")], 1.0);
                    for &j in &ancestors {
                        let age = kappa * (node.stage - case.tree.nodes[j].stage) as f64;
                        if age <= retro.lifetime {
                            b.set(row, columns[&format!("ret[{t}]@n{j}")], -1.0);
                        }
                    }
                }
                // Legacy capacity drops to zero once any ancestor converts
                // or abandons the source; `retired` is its complement.
                for sid in &xlayout.sources {
                    let hist = case.technology(sid).expect("layout ids exist").hist_legacy;
                    let row = b.add_row(format!("legacy[{sid}]@n{i}"), Sense::Eq, hist);
                    b.set(row, columns[&format!("accref[{sid}]@n{i}")], 1.0);
                    for &j in &ancestors {
                        b.set(row, columns[&format!("refy[{sid}]@n{j}")], hist);
                    }
                    let row = b.add_row(format!("split[{sid}]@n{i}"), Sense::Eq, hist);
                    b.set(row, columns[&format!("accref[{sid}]@n{i}")], 1.0);
                    b.set(row, columns[&format!("retired[{sid}]@n{i}")], 1.0);
                }
            }
        }
    }

    // Each source is converted at most once over the whole tree.
    for sid in &xlayout.sources {
        let row = b.add_row(format!("once[{sid}]"), Sense::Le, 1.0);
        for node in &case.tree.nodes {
            if node.kind == NodeKind::Investment {
                b.set(row, columns[&format!("refy[{sid}]@n{}", node.id)], 1.0);
            }
        }
    }

    // Bindings: the strategic vector of each operational node.
    let mut bindings = Vec::new();
    for node in &case.tree.nodes {
        if node.kind != NodeKind::Operational {
            continue;
        }
        let i = node.id;
        let econ = case.node_econ[i].as_ref().expect("validated");
        let mut x_cols = Vec::with_capacity(xlayout.dim());
        for id in &xlayout.regular {
            x_cols.push(columns[&format!("acc[{id}]@n{i}")]);
        }
        for id in &xlayout.targets {
            x_cols.push(columns[&format!("accret[{id}]@n{i}")]);
        }
        for id in &xlayout.sources {
            x_cols.push(columns[&format!("retired[{id}]@n{i}")]);
        }
        x_cols.push(columns[&format!("dred[power]@n{i}")]);
        x_cols.push(columns[&format!("dred[hydrogen]@n{i}")]);
        x_cols.push(columns[&format!("co2cap@n{i}")]);
        bindings.push(NodeBinding {
            node: i,
            weight: kappa * node.probability,
            x_cols,
            cost_point: vec![1.0, econ.co2_price],
        });
    }

    Ok(MasterModel {
        mip: MixedIntegerProgram::new(b.build(), binaries),
        bindings,
        columns,
        xlayout,
        refs,
    })
}
