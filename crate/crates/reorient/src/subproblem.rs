//! Dispatch subproblem template.
//!
//! One [`ScenarioBlock`] per sampled operational scenario, shared by every
//! operational node of the tree. A node's identity enters only through its
//! strategic vector (capacities, demand relief, CO2 budget) and its cost
//! point `(1, co2_price)`, which weights the two cost rows:
//!
//! * row 0 - fuel, variable O&M, and shedding penalties;
//! * row 1 - emission-weighted dispatch, priced by the node's CO2 charge.
//!
//! Every balance row carries both a load-shed column (supply of last
//! resort) and a free-disposal column (absorbs surplus), and the reserve
//! rows carry a shortfall column, so the dispatch is feasible for every
//! nonnegative strategic vector - including the all-zero worst case.

use std::collections::BTreeMap;

use crate::data::{CaseData, TechClass, Technology};
use crate::error::ReorientError;
use crate::layout::{DemandRefs, XLayout};
use lpcore::{Matrix, Sense};
use mhsp::ScenarioBlock;
use stoch::{sample_operational_scenarios, OperationalSample, SeriesTable};

/// Sparse accumulation of one scenario block.
struct BlockBuilder {
    x_dim: usize,
    names: Vec<String>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    cost0: Vec<f64>,
    cost1: Vec<f64>,
    senses: Vec<Sense>,
    rhs: Vec<f64>,
    w_entries: Vec<Vec<(usize, f64)>>,
    t_entries: Vec<Vec<(usize, f64)>>,
}

impl BlockBuilder {
    fn new(x_dim: usize) -> Self {
        BlockBuilder {
            x_dim,
            names: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            cost0: Vec::new(),
            cost1: Vec::new(),
            senses: Vec::new(),
            rhs: Vec::new(),
            w_entries: Vec::new(),
            t_entries: Vec::new(),
        }
    }

    fn col(&mut self, name: String, lower: f64, upper: f64) -> usize {
        self.names.push(name);
        self.lower.push(lower);
        self.upper.push(upper);
        self.cost0.push(0.0);
        self.cost1.push(0.0);
        self.names.len() - 1
    }

    fn row(&mut self, sense: Sense, rhs: f64) -> usize {
        self.senses.push(sense);
        self.rhs.push(rhs);
        self.w_entries.push(Vec::new());
        self.t_entries.push(Vec::new());
        self.rhs.len() - 1
    }

    fn w(&mut self, row: usize, col: usize, value: f64) {
        if value != 0.0 {
            self.w_entries[row].push((col, value));
        }
    }

    fn t(&mut self, row: usize, xcol: usize, value: f64) {
        if value != 0.0 {
            self.t_entries[row].push((xcol, value));
        }
    }

    fn add_rhs(&mut self, row: usize, value: f64) {
        self.rhs[row] += value;
    }

    fn finish(self, weight: f64) -> ScenarioBlock {
        let cols = self.names.len();
        let rows = self.rhs.len();
        let mut w = Matrix::zeros(rows, cols);
        let mut t = Matrix::zeros(rows, self.x_dim);
        for (r, entries) in self.w_entries.iter().enumerate() {
            for &(c, v) in entries {
                w.add_to(r, c, v);
            }
        }
        for (r, entries) in self.t_entries.iter().enumerate() {
            for &(c, v) in entries {
                t.add_to(r, c, v);
            }
        }
        let mut cost_rows = Matrix::zeros(2, cols);
        for j in 0..cols {
            cost_rows.set(0, j, self.cost0[j]);
            cost_rows.set(1, j, self.cost1[j]);
        }
        ScenarioBlock {
            weight,
            t,
            w,
            senses: self.senses,
            rhs: self.rhs,
            cost_rows,
            y_names: self.names,
            y_lower: self.lower,
            y_upper: self.upper,
        }
    }
}

/// Whether a technology can ever hold capacity; entries that cannot are
/// skipped entirely to keep the dispatch compact.
fn can_have_capacity(layout: &XLayout, tech: &Technology) -> bool {
    layout.accret(&tech.id).is_some() || tech.hist > 0.0 || tech.max_inv > 0.0
}

/// Draw the operational sample that all scenario blocks share.
pub fn draw_sample(case: &CaseData) -> Result<OperationalSample, ReorientError> {
    let columns = case
        .series
        .iter()
        .map(|(name, values)| ((String::new(), name.clone()), values.clone()));
    let table = SeriesTable::from_columns(columns)?;
    let s = &case.scalars;
    Ok(sample_operational_scenarios(
        &table,
        s.seasons,
        s.hours_per_season,
        s.scenarios,
        s.scenario_seed,
    )?)
}

/// Build the scenario template: one block per sampled scenario. The blocks
/// share their column and row layout; only series values differ.
pub fn build_subproblem(case: &CaseData) -> Result<Vec<ScenarioBlock>, ReorientError> {
    let layout = XLayout::new(case);
    let refs = DemandRefs::new(case);
    let sample = draw_sample(case)?;
    let weights = shared_scenario_weights(case)?;
    let mut blocks = Vec::with_capacity(case.scalars.scenarios);
    for (s, &weight) in weights.iter().enumerate() {
        blocks.push(build_block(case, &layout, refs, &sample, s, weight));
    }
    Ok(blocks)
}

/// All operational nodes must agree on the scenario weights, because the
/// template is shared; returns that common vector.
pub fn shared_scenario_weights(case: &CaseData) -> Result<Vec<f64>, ReorientError> {
    let mut shared: Option<(usize, Vec<f64>)> = None;
    for node in &case.tree.nodes {
        if node.kind != mhsp::NodeKind::Operational {
            continue;
        }
        match &shared {
            None => shared = Some((node.id, node.scenario_weights.clone())),
            Some((first, w)) => {
                let same = w.len() == node.scenario_weights.len()
                    && w.iter()
                        .zip(&node.scenario_weights)
                        .all(|(a, b)| (a - b).abs() <= 1e-12);
                if !same {
                    return Err(ReorientError::Data(format!(
                        "operational nodes {first} and {} use different scenario weights",
                        node.id
                    )));
                }
            }
        }
    }
    let (_, weights) = shared.ok_or_else(|| {
        ReorientError::Data("the tree has no operational nodes".into())
    })?;
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-9 || weights.iter().any(|w| *w < 0.0) {
        return Err(ReorientError::Data(format!(
            "scenario weights sum to {total}, expected 1"
        )));
    }
    Ok(weights)
}

fn build_block(
    case: &CaseData,
    layout: &XLayout,
    refs: DemandRefs,
    sample: &OperationalSample,
    scenario: usize,
    weight: f64,
) -> ScenarioBlock {
    let s = &case.scalars;
    let periods = s.seasons * s.hours_per_season;
    let pi = sample.period_scale;
    let inf = f64::INFINITY;

    // Sampled series values for this scenario.
    let mut val: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    for (name, col) in &case.series {
        let picked: Vec<f64> = sample.hours[scenario].iter().map(|&h| col[h]).collect();
        val.insert(name.as_str(), picked);
    }
    let series = |name: &Option<String>, tau: usize| -> f64 {
        name.as_ref().map_or(0.0, |n| val[n.as_str()][tau])
    };

    let mut b = BlockBuilder::new(layout.dim());

    // Balance and reserve rows come first so that technology columns can
    // stream their entries in.
    let mut power_row = vec![0usize; case.regions.len() * periods];
    let mut hydrogen_row = vec![0usize; case.regions.len() * periods];
    let mut heat_row: Vec<Option<usize>> = vec![None; case.regions.len() * periods];
    let mut reserve_row: Vec<Option<usize>> = vec![None; case.regions.len() * periods];
    let region_index: BTreeMap<&str, usize> =
        case.regions.iter().enumerate().map(|(i, r)| (r.id.as_str(), i)).collect();

    for (z, region) in case.regions.iter().enumerate() {
        for tau in 0..periods {
            let dp = series(&region.demand_power, tau);
            let row = b.row(Sense::Eq, refs.power * dp);
            b.t(row, layout.dred_power(), dp);
            power_row[z * periods + tau] = row;

            let dhy = series(&region.demand_hydrogen, tau);
            let row = b.row(Sense::Eq, refs.hydrogen * dhy);
            b.t(row, layout.dred_hydrogen(), dhy);
            hydrogen_row[z * periods + tau] = row;

            if region.platform {
                let dh = series(&region.demand_heat, tau);
                heat_row[z * periods + tau] = Some(b.row(Sense::Eq, dh));
            }
            if region.reserve_margin > 0.0 && region.demand_power.is_some() {
                let need = region.reserve_margin * dp;
                reserve_row[z * periods + tau] = Some(b.row(Sense::Ge, need));
            }
        }
    }

    // Platform loads sit on the demand side. Loads tied to `hist` are
    // permanent; loads tied to legacy capacity shrink as it retires.
    for tech in &case.technologies {
        if tech.class != TechClass::PlatformCluster {
            continue;
        }
        let total = tech.hist + tech.hist_legacy;
        if total == 0.0 {
            continue;
        }
        let slot = layout.retired(&tech.id);
        let z = region_index[tech.region.as_deref().expect("validated")];
        for tau in 0..periods {
            if tech.power_load > 0.0 {
                let row = power_row[z * periods + tau];
                b.add_rhs(row, tech.power_load * total);
                if let Some(slot) = slot {
                    b.t(row, slot, tech.power_load);
                }
            }
            if tech.heat_load > 0.0 {
                if let Some(row) = heat_row[z * periods + tau] {
                    b.add_rhs(row, tech.heat_load * total);
                    if let Some(slot) = slot {
                        b.t(row, slot, tech.heat_load);
                    }
                }
            }
        }
    }

    // One CO2 accounting row per scenario: annualised emissions within the
    // sampled budget.
    let emission_row = b.row(Sense::Le, 0.0);
    b.t(emission_row, layout.co2_cap(), -1.0);

    // Technology columns and their coupling rows.
    for tech in &case.technologies {
        let cap = layout.capacity(&tech.id);
        match tech.class {
            TechClass::Renewable => {
                // No columns: profile x capacity feeds the balance directly
                // through the strategic side.
                if !can_have_capacity(layout, tech) {
                    continue;
                }
                let Some(slot) = cap else { continue };
                let z = region_index[tech.region.as_deref().expect("validated")];
                for tau in 0..periods {
                    let availability = series(&tech.profile, tau);
                    b.t(power_row[z * periods + tau], slot, availability);
                }
            }
            TechClass::PlatformCluster => {}
            TechClass::Thermal => {
                if !can_have_capacity(layout, tech) {
                    continue;
                }
                let slot = cap.expect("dispatchable technologies have a capacity slot");
                let z = region_index[tech.region.as_deref().expect("validated")];
                let pg: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("pg[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                let rg: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("rg[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                for tau in 0..periods {
                    b.w(power_row[z * periods + tau], pg[tau], 1.0);
                    if tech.heat_recovery > 0.0 {
                        if let Some(row) = heat_row[z * periods + tau] {
                            b.w(row, pg[tau], tech.heat_recovery);
                        }
                    }
                    if let Some(row) = reserve_row[z * periods + tau] {
                        b.w(row, rg[tau], 1.0);
                    }
                    let row = b.row(Sense::Le, 0.0);
                    b.w(row, pg[tau], 1.0);
                    b.w(row, rg[tau], 1.0);
                    b.t(row, slot, -1.0);
                    b.w(emission_row, pg[tau], pi * tech.emission);
                    b.cost0[pg[tau]] = pi * tech.marginal_cost;
                    b.cost1[pg[tau]] = pi * tech.emission;
                }
                if tech.ramp < 1.0 {
                    for season in 0..s.seasons {
                        let start = season * s.hours_per_season;
                        for tau in start + 1..start + s.hours_per_season {
                            for dir in [1.0, -1.0] {
                                let row = b.row(Sense::Le, 0.0);
                                b.w(row, pg[tau], dir);
                                b.w(row, rg[tau], dir);
                                b.w(row, pg[tau - 1], -dir);
                                b.w(row, rg[tau - 1], -dir);
                                b.t(row, slot, -tech.ramp);
                            }
                        }
                    }
                }
            }
            TechClass::HydroRor | TechClass::HydroSeasonal => {
                if !can_have_capacity(layout, tech) {
                    continue;
                }
                let slot = cap.expect("dispatchable technologies have a capacity slot");
                let z = region_index[tech.region.as_deref().expect("validated")];
                let ph: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("ph[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                for tau in 0..periods {
                    b.w(power_row[z * periods + tau], ph[tau], 1.0);
                    b.cost0[ph[tau]] = pi * tech.marginal_cost;
                    let row = b.row(Sense::Le, 0.0);
                    b.w(row, ph[tau], 1.0);
                    if tech.class == TechClass::HydroRor {
                        b.t(row, slot, -series(&tech.profile, tau));
                    } else {
                        b.t(row, slot, -1.0);
                    }
                }
                if tech.class == TechClass::HydroSeasonal {
                    for season in 0..s.seasons {
                        let start = season * s.hours_per_season;
                        let budget: f64 = (start..start + s.hours_per_season)
                            .map(|tau| series(&tech.profile, tau))
                            .sum();
                        let row = b.row(Sense::Le, budget);
                        for tau in start..start + s.hours_per_season {
                            b.w(row, ph[tau], 1.0);
                        }
                    }
                }
            }
            TechClass::ElectricStorage => {
                if !can_have_capacity(layout, tech) {
                    continue;
                }
                let slot = cap.expect("dispatchable technologies have a capacity slot");
                let z = region_index[tech.region.as_deref().expect("validated")];
                let sc: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("sc[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                let sd: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("sd[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                let rs: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("rs[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                let se: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("se[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                for tau in 0..periods {
                    b.w(power_row[z * periods + tau], sd[tau], 1.0);
                    b.w(power_row[z * periods + tau], sc[tau], -1.0);
                    if let Some(row) = reserve_row[z * periods + tau] {
                        b.w(row, rs[tau], 1.0);
                    }
                    let row = b.row(Sense::Le, 0.0);
                    b.w(row, sd[tau], 1.0);
                    b.w(row, rs[tau], 1.0);
                    b.t(row, slot, -1.0);
                    let row = b.row(Sense::Le, 0.0);
                    b.w(row, sc[tau], 1.0);
                    b.t(row, slot, -1.0);
                    let row = b.row(Sense::Le, 0.0);
                    b.w(row, se[tau], 1.0);
                    b.t(row, slot, -tech.duration);
                }
                for season in 0..s.seasons {
                    let start = season * s.hours_per_season;
                    for tau in start..start + s.hours_per_season {
                        let next = if tau + 1 == start + s.hours_per_season {
                            start
                        } else {
                            tau + 1
                        };
                        let row = b.row(Sense::Eq, 0.0);
                        b.w(row, se[next], 1.0);
                        b.w(row, se[tau], -1.0);
                        b.w(row, sc[tau], -tech.efficiency);
                        b.w(row, sd[tau], 1.0);
                    }
                }
            }
            TechClass::HydrogenStorage => {
                if !can_have_capacity(layout, tech) {
                    continue;
                }
                let slot = cap.expect("dispatchable technologies have a capacity slot");
                let z = region_index[tech.region.as_deref().expect("validated")];
                let hc: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("hc[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                let hd: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("hd[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                let he: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("he[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                for tau in 0..periods {
                    b.w(hydrogen_row[z * periods + tau], hd[tau], 1.0);
                    b.w(hydrogen_row[z * periods + tau], hc[tau], -1.0);
                    for (col, scale) in [(hc[tau], 1.0), (hd[tau], 1.0)] {
                        let row = b.row(Sense::Le, 0.0);
                        b.w(row, col, scale);
                        b.t(row, slot, -1.0);
                    }
                    let row = b.row(Sense::Le, 0.0);
                    b.w(row, he[tau], 1.0);
                    b.t(row, slot, -tech.duration);
                }
                for season in 0..s.seasons {
                    let start = season * s.hours_per_season;
                    for tau in start..start + s.hours_per_season {
                        let next = if tau + 1 == start + s.hours_per_season {
                            start
                        } else {
                            tau + 1
                        };
                        let row = b.row(Sense::Eq, 0.0);
                        b.w(row, he[next], 1.0);
                        b.w(row, he[tau], -1.0);
                        b.w(row, hc[tau], -1.0);
                        b.w(row, hd[tau], 1.0);
                    }
                }
            }
            TechClass::Electrolyser | TechClass::FuelCell | TechClass::ElectricBoiler
            | TechClass::SmrCcs => {
                if !can_have_capacity(layout, tech) {
                    continue;
                }
                let slot = cap.expect("dispatchable technologies have a capacity slot");
                let z = region_index[tech.region.as_deref().expect("validated")];
                let tag = match tech.class {
                    TechClass::Electrolyser => "pe",
                    TechClass::FuelCell => "pf",
                    TechClass::ElectricBoiler => "pb",
                    _ => "vr",
                };
                let cols: Vec<usize> = (0..periods)
                    .map(|tau| b.col(format!("{tag}[{}]t{tau}", tech.id), 0.0, inf))
                    .collect();
                for tau in 0..periods {
                    let col = cols[tau];
                    match tech.class {
                        TechClass::Electrolyser => {
                            b.w(power_row[z * periods + tau], col, -1.0);
                            b.w(hydrogen_row[z * periods + tau], col, tech.conversion);
                        }
                        TechClass::FuelCell => {
                            b.w(power_row[z * periods + tau], col, 1.0);
                            b.w(hydrogen_row[z * periods + tau], col, -tech.conversion);
                        }
                        TechClass::ElectricBoiler => {
                            b.w(power_row[z * periods + tau], col, -1.0);
                            if let Some(row) = heat_row[z * periods + tau] {
                                b.w(row, col, tech.efficiency);
                            }
                        }
                        _ => {
                            b.w(hydrogen_row[z * periods + tau], col, 1.0);
                            b.w(emission_row, col, pi * tech.emission);
                            b.cost1[col] = pi * tech.emission;
                        }
                    }
                    b.cost0[col] = pi * tech.marginal_cost;
                    let row = b.row(Sense::Le, 0.0);
                    b.w(row, col, 1.0);
                    b.t(row, slot, -1.0);
                }
            }
            TechClass::TransmissionLine | TechClass::HydrogenPipeline => {
                if !can_have_capacity(layout, tech) {
                    continue;
                }
                let slot = cap.expect("network entries have a capacity slot");
                let from = region_index[tech.from.as_deref().expect("validated")];
                let to = region_index[tech.to.as_deref().expect("validated")];
                let electric = tech.class == TechClass::TransmissionLine;
                let tag = if electric { "fl" } else { "fh" };
                for tau in 0..periods {
                    let col = b.col(format!("{tag}[{}]t{tau}", tech.id), -inf, inf);
                    let (rows, gain) = if electric {
                        (&power_row, tech.efficiency)
                    } else {
                        (&hydrogen_row, 1.0)
                    };
                    b.w(rows[to * periods + tau], col, gain);
                    b.w(rows[from * periods + tau], col, -gain);
                    for dir in [1.0, -1.0] {
                        let row = b.row(Sense::Le, 0.0);
                        b.w(row, col, dir);
                        b.t(row, slot, -1.0);
                    }
                }
            }
        }
    }

    // Last-resort columns: load shedding, free disposal, reserve shortfall.
    for (z, region) in case.regions.iter().enumerate() {
        for tau in 0..periods {
            let shed = b.col(format!("shedp[{}]t{tau}", region.id), 0.0, inf);
            b.w(power_row[z * periods + tau], shed, 1.0);
            b.cost0[shed] = pi * s.shed_power;
            let spill = b.col(format!("gshedp[{}]t{tau}", region.id), 0.0, inf);
            b.w(power_row[z * periods + tau], spill, -1.0);

            let shed = b.col(format!("shedhy[{}]t{tau}", region.id), 0.0, inf);
            b.w(hydrogen_row[z * periods + tau], shed, 1.0);
            b.cost0[shed] = pi * s.shed_hydrogen;
            let spill = b.col(format!("gshedhy[{}]t{tau}", region.id), 0.0, inf);
            b.w(hydrogen_row[z * periods + tau], spill, -1.0);

            if let Some(row) = heat_row[z * periods + tau] {
                let shed = b.col(format!("shedh[{}]t{tau}", region.id), 0.0, inf);
                b.w(row, shed, 1.0);
                b.cost0[shed] = pi * s.shed_heat;
                let spill = b.col(format!("gshedh[{}]t{tau}", region.id), 0.0, inf);
                b.w(row, spill, -1.0);
            }
            if let Some(row) = reserve_row[z * periods + tau] {
                let short = b.col(format!("resshort[{}]t{tau}", region.id), 0.0, inf);
                b.w(row, short, 1.0);
                b.cost0[short] = pi * s.shed_power;
            }
        }
    }

    b.finish(weight)
}
