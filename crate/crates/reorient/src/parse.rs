//! Plain-text case format.
//!
//! A case file is line-oriented. `#` starts a comment, blank lines are
//! skipped, and `[section]` headers switch between blocks:
//!
//! ```text
//! [scalars]       key value            (or key=value)
//! [tree]          id inv|ope ancestor|- stage probability [key=value ...]
//! [regions]       id [platform] [key=value ...]
//! [technologies]  id class region [key=value ...]
//! [lines]         id from to [key=value ...]        (transmission-line)
//! [pipelines]     id from to [key=value ...]        (hydrogen-pipeline)
//! [retrofits]     source target [key=value ...]
//! [series]        name v0 v1 v2 ...
//! ```
//!
//! Series shorter than the case's `hours` are tiled cyclically, so a daily
//! pattern can stand in for a longer horizon. Operational tree nodes accept
//! economics keys (`mu_dp`, `mu_dhy`, `mu_e`, `co2`, `oil`, `gas`) and an
//! optional `weights=w0:w1:...` override for their scenario weights.

use std::collections::BTreeMap;

use crate::data::{
    CaseData, CaseScalars, NodeEconomics, Region, RetrofitOption, TechClass, Technology,
};
use crate::error::ReorientError;
use mhsp::{NodeKind, StrategicNode, StrategicTree};

struct Cursor<'a> {
    line: usize,
    tokens: Vec<&'a str>,
}

impl<'a> Cursor<'a> {
    fn err(&self, message: impl Into<String>) -> ReorientError {
        ReorientError::Parse { line: self.line, message: message.into() }
    }

    fn positional(&self, index: usize, what: &str) -> Result<&'a str, ReorientError> {
        self.tokens
            .get(index)
            .copied()
            .ok_or_else(|| self.err(format!("missing {what}")))
    }

    /// Key=value pairs after the first `skip` positional tokens.
    fn pairs(&self, skip: usize) -> Result<Vec<(&'a str, &'a str)>, ReorientError> {
        let mut out = Vec::new();
        for token in &self.tokens[skip.min(self.tokens.len())..] {
            let Some((k, v)) = token.split_once('=') else {
                return Err(self.err(format!("expected key=value, found `{token}`")));
            };
            out.push((k, v));
        }
        Ok(out)
    }

    fn number(&self, text: &str, what: &str) -> Result<f64, ReorientError> {
        match text {
            "inf" => Ok(f64::INFINITY),
            _ => text
                .parse::<f64>()
                .map_err(|_| self.err(format!("{what}: `{text}` is not a number"))),
        }
    }

    fn integer(&self, text: &str, what: &str) -> Result<usize, ReorientError> {
        text.parse::<usize>()
            .map_err(|_| self.err(format!("{what}: `{text}` is not a nonnegative integer")))
    }
}

/// Parse a case from text. The returned case is fully validated.
pub fn load_case(name: &str, text: &str) -> Result<CaseData, ReorientError> {
    let mut section = String::new();
    let mut scalars = CaseScalars::default();
    let mut nodes: Vec<StrategicNode> = Vec::new();
    let mut econ: Vec<Option<NodeEconomics>> = Vec::new();
    let mut weight_overrides: Vec<Option<Vec<f64>>> = Vec::new();
    let mut regions = Vec::new();
    let mut reserve_defaulted: Vec<bool> = Vec::new();
    let mut technologies = Vec::new();
    let mut retrofits = Vec::new();
    let mut raw_series: BTreeMap<String, Vec<f64>> = BTreeMap::new();

    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cur = Cursor { line: index + 1, tokens: line.split_whitespace().collect() };

        if line.starts_with('[') {
            if !(line.ends_with(']') && cur.tokens.len() == 1) {
                return Err(cur.err("malformed section header"));
            }
            section = line[1..line.len() - 1].to_string();
            match section.as_str() {
                "scalars" | "tree" | "regions" | "technologies" | "lines" | "pipelines"
                | "retrofits" | "series" => {}
                other => return Err(cur.err(format!("unknown section [{other}]"))),
            }
            continue;
        }

        match section.as_str() {
            "" => return Err(cur.err("content before the first section header")),
            "scalars" => {
                let (key, value) = match cur.tokens.as_slice() {
                    [pair] => pair
                        .split_once('=')
                        .ok_or_else(|| cur.err("expected `key value` or `key=value`"))?,
                    [key, value] => (*key, *value),
                    _ => return Err(cur.err("expected `key value`")),
                };
                match key {
                    "years_per_stage" | "kappa" => {
                        scalars.years_per_stage = cur.number(value, key)?;
                    }
                    "hours" => scalars.hours = cur.integer(value, key)?,
                    "seasons" => scalars.seasons = cur.integer(value, key)?,
                    "hours_per_season" => scalars.hours_per_season = cur.integer(value, key)?,
                    "scenarios" => scalars.scenarios = cur.integer(value, key)?,
                    "scenario_seed" => scalars.scenario_seed = cur.integer(value, key)? as u64,
                    "shed_power" => scalars.shed_power = cur.number(value, key)?,
                    "shed_heat" => scalars.shed_heat = cur.number(value, key)?,
                    "shed_hydrogen" => scalars.shed_hydrogen = cur.number(value, key)?,
                    "reserve" | "reserve_margin" => {
                        scalars.reserve_margin = cur.number(value, key)?;
                    }
                    "profit_share" => scalars.profit_share = cur.number(value, key)?,
                    other => return Err(cur.err(format!("unknown scalar `{other}`"))),
                }
            }
            "tree" => {
                let id = cur.integer(cur.positional(0, "node id")?, "node id")?;
                let kind = match cur.positional(1, "node kind")? {
                    "inv" => NodeKind::Investment,
                    "ope" => NodeKind::Operational,
                    other => return Err(cur.err(format!("node kind `{other}` is not inv|ope"))),
                };
                let ancestor = match cur.positional(2, "ancestor")? {
                    "-" => None,
                    text => Some(cur.integer(text, "ancestor")?),
                };
                let stage = cur.integer(cur.positional(3, "stage")?, "stage")?;
                let probability = cur.number(cur.positional(4, "probability")?, "probability")?;
                let mut node_econ = NodeEconomics::default();
                let mut weights = None;
                for (key, value) in cur.pairs(5)? {
                    match key {
                        "mu_dp" => node_econ.demand_power_scale = cur.number(value, key)?,
                        "mu_dhy" => node_econ.demand_hydrogen_scale = cur.number(value, key)?,
                        "mu_e" => node_econ.emission_budget = cur.number(value, key)?,
                        "co2" => node_econ.co2_price = cur.number(value, key)?,
                        "oil" => node_econ.oil_price = cur.number(value, key)?,
                        "gas" => node_econ.gas_price = cur.number(value, key)?,
                        "weights" => {
                            let mut parsed = Vec::new();
                            for part in value.split(':') {
                                parsed.push(cur.number(part, "weights")?);
                            }
                            weights = Some(parsed);
                        }
                        other => return Err(cur.err(format!("unknown node key `{other}`"))),
                    }
                }
                if id != nodes.len() {
                    return Err(cur.err(format!(
                        "node ids must be dense and ordered; expected {}, found {id}",
                        nodes.len()
                    )));
                }
                nodes.push(StrategicNode {
                    id,
                    kind,
                    ancestor,
                    stage,
                    probability,
                    scenario_weights: Vec::new(),
                });
                econ.push((kind == NodeKind::Operational).then_some(node_econ));
                weight_overrides.push(weights);
            }
            "regions" => {
                let id = cur.positional(0, "region id")?;
                let mut region = Region::new(id);
                let mut skip = 1;
                if cur.tokens.get(1) == Some(&"platform") {
                    region.platform = true;
                    skip = 2;
                }
                let mut reserve_given = false;
                for (key, value) in cur.pairs(skip)? {
                    match key {
                        "demand_power" => region.demand_power = Some(value.to_string()),
                        "demand_heat" => region.demand_heat = Some(value.to_string()),
                        "demand_hydrogen" => region.demand_hydrogen = Some(value.to_string()),
                        "reserve" => {
                            region.reserve_margin = cur.number(value, key)?;
                            reserve_given = true;
                        }
                        other => return Err(cur.err(format!("unknown region key `{other}`"))),
                    }
                }
                regions.push(region);
                reserve_defaulted.push(!reserve_given);
            }
            "technologies" => {
                let id = cur.positional(0, "technology id")?;
                let class_token = cur.positional(1, "class")?;
                let Some(class) = TechClass::from_token(class_token) else {
                    return Err(cur.err(format!("unknown class `{class_token}`")));
                };
                if class.is_network() {
                    return Err(cur.err(format!(
                        "{class_token} entries belong in [lines] or [pipelines]"
                    )));
                }
                let region = cur.positional(2, "region")?;
                let mut tech = Technology::new(id, class);
                tech.region = Some(region.to_string());
                apply_tech_keys(&cur, &mut tech, 3)?;
                technologies.push(tech);
            }
            "lines" | "pipelines" => {
                let id = cur.positional(0, "entry id")?;
                let from = cur.positional(1, "origin region")?;
                let to = cur.positional(2, "destination region")?;
                let class = if section == "lines" {
                    TechClass::TransmissionLine
                } else {
                    TechClass::HydrogenPipeline
                };
                let mut tech = Technology::new(id, class);
                tech.from = Some(from.to_string());
                tech.to = Some(to.to_string());
                apply_tech_keys(&cur, &mut tech, 3)?;
                technologies.push(tech);
            }
            "retrofits" => {
                let source = cur.positional(0, "source")?;
                let target = cur.positional(1, "target")?;
                let mut retro = RetrofitOption {
                    source: source.to_string(),
                    target: target.to_string(),
                    cost_var: 0.0,
                    cost_trigger: 0.0,
                    fixed_om: 0.0,
                    max_convert: 0.0,
                    max_acc: f64::INFINITY,
                    lifetime: f64::INFINITY,
                };
                for (key, value) in cur.pairs(2)? {
                    match key {
                        "cost_var" => retro.cost_var = cur.number(value, key)?,
                        "cost_trigger" => retro.cost_trigger = cur.number(value, key)?,
                        "fixed_om" => retro.fixed_om = cur.number(value, key)?,
                        "max_convert" => retro.max_convert = cur.number(value, key)?,
                        "max_acc" => retro.max_acc = cur.number(value, key)?,
                        "lifetime" => retro.lifetime = cur.number(value, key)?,
                        other => return Err(cur.err(format!("unknown retrofit key `{other}`"))),
                    }
                }
                retrofits.push(retro);
            }
            "series" => {
                let name = cur.positional(0, "series name")?;
                if cur.tokens.len() < 2 {
                    return Err(cur.err(format!("series {name} has no values")));
                }
                let mut values = Vec::with_capacity(cur.tokens.len() - 1);
                for token in &cur.tokens[1..] {
                    values.push(cur.number(token, "series value")?);
                }
                if raw_series.insert(name.to_string(), values).is_some() {
                    return Err(cur.err(format!("series {name} appears twice")));
                }
            }
            _ => unreachable!("section names are checked at the header"),
        }
    }

    // Tile series to the case horizon.
    let mut series = BTreeMap::new();
    for (name, values) in raw_series {
        let mut tiled = Vec::with_capacity(scalars.hours);
        for h in 0..scalars.hours {
            tiled.push(values[h % values.len()]);
        }
        series.insert(name, tiled);
    }

    // The case-wide reserve margin is the default for onshore regions that
    // do not set their own; platform regions opt in explicitly.
    for (region, defaulted) in regions.iter_mut().zip(&reserve_defaulted) {
        if *defaulted && !region.platform {
            region.reserve_margin = scalars.reserve_margin;
        }
    }

    // Default scenario weights are uniform; overrides come from the file.
    for node in &mut nodes {
        if node.kind == NodeKind::Operational {
            node.scenario_weights = match weight_overrides[node.id].take() {
                Some(w) => w,
                None => vec![1.0 / scalars.scenarios as f64; scalars.scenarios],
            };
        }
    }

    let case = CaseData {
        name: name.to_string(),
        tree: StrategicTree { nodes },
        node_econ: econ,
        regions,
        technologies,
        retrofits,
        series,
        scalars,
    };
    case.validate()?;
    Ok(case)
}

fn apply_tech_keys(
    cur: &Cursor,
    tech: &mut Technology,
    skip: usize,
) -> Result<(), ReorientError> {
    for (key, value) in cur.pairs(skip)? {
        match key {
            "inv_cost" => tech.inv_cost = cur.number(value, key)?,
            "trigger_cost" => tech.trigger_cost = cur.number(value, key)?,
            "fixed_om" => tech.fixed_om = cur.number(value, key)?,
            "lifetime" => tech.lifetime = cur.number(value, key)?,
            "max_inv" => tech.max_inv = cur.number(value, key)?,
            "max_acc" => tech.max_acc = cur.number(value, key)?,
            "hist" => tech.hist = cur.number(value, key)?,
            "hist_legacy" => tech.hist_legacy = cur.number(value, key)?,
            "fixed_om_legacy" => tech.fixed_om_legacy = cur.number(value, key)?,
            "marginal_cost" => tech.marginal_cost = cur.number(value, key)?,
            "emission" => tech.emission = cur.number(value, key)?,
            "ramp" => tech.ramp = cur.number(value, key)?,
            "heat_recovery" => tech.heat_recovery = cur.number(value, key)?,
            "efficiency" => tech.efficiency = cur.number(value, key)?,
            "duration" => tech.duration = cur.number(value, key)?,
            "conversion" => tech.conversion = cur.number(value, key)?,
            "profile" => tech.profile = Some(value.to_string()),
            "power_load" => tech.power_load = cur.number(value, key)?,
            "heat_load" => tech.heat_load = cur.number(value, key)?,
            "oil_rate" => tech.oil_rate = cur.number(value, key)?,
            "gas_rate" => tech.gas_rate = cur.number(value, key)?,
            "plateau_years" => tech.plateau_years = cur.number(value, key)?,
            "decline" => tech.decline = cur.number(value, key)?,
            other => return Err(cur.err(format!("unknown technology key `{other}`"))),
        }
    }
    Ok(())
}
