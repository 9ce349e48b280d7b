//! Case data model: regions, technologies, retrofit options, per-node
//! economics, and dispatch series for an integrated investment, retrofit,
//! and abandonment planning study.
//!
//! A case couples a strategic scenario tree (investment nodes interleaved
//! with operational nodes) with a regional energy system. Technologies are
//! closed-world: every entry belongs to one of the classes below and the
//! model builder derives its dispatch variables and rows from the class
//! alone, so a case file can never introduce behaviour the solver does not
//! know about.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::ReorientError;
use mhsp::{NodeKind, StrategicTree};

/// Dispatch behaviour of a technology.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TechClass {
    /// Fuel-burning generator: dispatchable power, spinning reserve,
    /// ramp limits, optional heat recovery, CO2 emissions.
    Thermal,
    /// Non-dispatchable generation; output is `profile x capacity` and any
    /// excess is absorbed by the generation-shed column.
    Renewable,
    /// Run-of-river hydro: dispatchable up to `profile x capacity` each hour.
    HydroRor,
    /// Seasonal hydro: dispatchable up to capacity with a per-season energy
    /// budget given by its profile series.
    HydroSeasonal,
    /// Electric storage: charge, discharge, reserve provision, and a cyclic
    /// energy balance per season.
    ElectricStorage,
    /// Hydrogen storage: inject, withdraw, and a cyclic mass balance.
    HydrogenStorage,
    /// Power-to-hydrogen conversion.
    Electrolyser,
    /// Hydrogen-to-power conversion.
    FuelCell,
    /// Power-to-heat conversion.
    ElectricBoiler,
    /// Gas-reforming hydrogen production with carbon capture; emits the
    /// residual CO2 per unit of hydrogen.
    SmrCcs,
    /// Electric interconnector between two regions; flow is free-signed.
    TransmissionLine,
    /// Hydrogen pipeline between two regions; flow is free-signed. Existing
    /// gas pipelines are entries of this class whose hydrogen capacity is
    /// zero until a retrofit converts them.
    HydrogenPipeline,
    /// Offshore platform cluster: fixed power and heat loads per unit of
    /// legacy capacity plus oil/gas production revenue; no dispatch columns.
    PlatformCluster,
}

impl TechClass {
    pub fn token(self) -> &'static str {
        match self {
            TechClass::Thermal => "thermal",
            TechClass::Renewable => "renewable",
            TechClass::HydroRor => "hydro-ror",
            TechClass::HydroSeasonal => "hydro-seasonal",
            TechClass::ElectricStorage => "electric-storage",
            TechClass::HydrogenStorage => "hydrogen-storage",
            TechClass::Electrolyser => "electrolyser",
            TechClass::FuelCell => "fuel-cell",
            TechClass::ElectricBoiler => "electric-boiler",
            TechClass::SmrCcs => "smr-ccs",
            TechClass::TransmissionLine => "transmission-line",
            TechClass::HydrogenPipeline => "hydrogen-pipeline",
            TechClass::PlatformCluster => "platform-cluster",
        }
    }

    pub fn from_token(token: &str) -> Option<Self> {
        Some(match token {
            "thermal" => TechClass::Thermal,
            "renewable" => TechClass::Renewable,
            "hydro-ror" => TechClass::HydroRor,
            "hydro-seasonal" => TechClass::HydroSeasonal,
            "electric-storage" => TechClass::ElectricStorage,
            "hydrogen-storage" => TechClass::HydrogenStorage,
            "electrolyser" => TechClass::Electrolyser,
            "fuel-cell" => TechClass::FuelCell,
            "electric-boiler" => TechClass::ElectricBoiler,
            "smr-ccs" => TechClass::SmrCcs,
            "transmission-line" => TechClass::TransmissionLine,
            "hydrogen-pipeline" => TechClass::HydrogenPipeline,
            "platform-cluster" => TechClass::PlatformCluster,
        _ => return None,
        })
    }

    /// Network classes connect two regions instead of sitting in one.
    pub fn is_network(self) -> bool {
        matches!(self, TechClass::TransmissionLine | TechClass::HydrogenPipeline)
    }
}

/// One technology entry. Unused fields stay at their defaults; the model
/// builder only reads the fields its class gives meaning to.
#[derive(Clone, Debug)]
pub struct Technology {
    pub id: String,
    pub class: TechClass,
    /// Host region for single-region classes.
    pub region: Option<String>,
    /// Endpoints for network classes.
    pub from: Option<String>,
    pub to: Option<String>,

    // Investment economics.
    /// Capacity-proportional investment cost per unit built.
    pub inv_cost: f64,
    /// Lump cost triggered by building anything at a node; a binary
    /// build indicator exists only when this is positive.
    pub trigger_cost: f64,
    /// Fixed O&M per unit of accumulated capacity per year.
    pub fixed_om: f64,
    /// Technical lifetime in years; builds drop out of the accumulated
    /// capacity once the stage distance exceeds it.
    pub lifetime: f64,
    /// Largest build per investment node; zero means not investable.
    pub max_inv: f64,
    /// Cap on accumulated capacity.
    pub max_acc: f64,
    /// Pre-existing capacity that participates like an investment made
    /// before the horizon.
    pub hist: f64,

    // Legacy-asset (retrofit source) economics.
    /// Capacity in its original use that a retrofit can convert or an
    /// abandonment can remove; zero means the entry is not a source.
    pub hist_legacy: f64,
    /// Fixed O&M per unit of surviving legacy capacity per year.
    pub fixed_om_legacy: f64,

    // Dispatch parameters.
    /// Variable plus fuel cost per unit of output (CO2 charge excluded;
    /// the per-node CO2 price is applied to `emission` separately).
    pub marginal_cost: f64,
    /// CO2 per unit of output.
    pub emission: f64,
    /// Per-period ramp as a fraction of capacity.
    pub ramp: f64,
    /// Heat output per unit of power (thermal).
    pub heat_recovery: f64,
    /// Transfer efficiency (lines), heat per MWh (boilers), or charging
    /// efficiency (electric storage).
    pub efficiency: f64,
    /// Storage duration in hours: energy capacity per unit of power.
    pub duration: f64,
    /// Hydrogen tonnes per MWh: production (electrolyser) or use (fuel cell).
    pub conversion: f64,
    /// Series name: availability factor (renewable, run-of-river) or
    /// seasonal energy budget (seasonal hydro).
    pub profile: Option<String>,

    // Platform-cluster fields, per unit of legacy capacity.
    pub power_load: f64,
    pub heat_load: f64,
    /// Production volumes per year while on plateau, priced with the
    /// operational node's oil and gas prices.
    pub oil_rate: f64,
    pub gas_rate: f64,
    /// Years of plateau production from the start of the horizon.
    pub plateau_years: f64,
    /// Exponential decline rate after the plateau.
    pub decline: f64,
}

impl Technology {
    pub fn new(id: &str, class: TechClass) -> Self {
        Technology {
            id: id.to_string(),
            class,
            region: None,
            from: None,
            to: None,
            inv_cost: 0.0,
            trigger_cost: 0.0,
            fixed_om: 0.0,
            lifetime: f64::INFINITY,
            max_inv: 0.0,
            max_acc: f64::INFINITY,
            hist: 0.0,
            hist_legacy: 0.0,
            fixed_om_legacy: 0.0,
            marginal_cost: 0.0,
            emission: 0.0,
            ramp: 1.0,
            heat_recovery: 0.0,
            efficiency: 1.0,
            duration: 0.0,
            conversion: 0.0,
            profile: None,
            power_load: 0.0,
            heat_load: 0.0,
            oil_rate: 0.0,
            gas_rate: 0.0,
            plateau_years: 0.0,
            decline: 0.0,
        }
    }

    /// Annual production revenue at `year`, priced at the given oil and gas
    /// prices; declines exponentially after the plateau.
    pub fn production_revenue(&self, year: f64, oil_price: f64, gas_price: f64) -> f64 {
        if self.oil_rate == 0.0 && self.gas_rate == 0.0 {
            return 0.0;
        }
        let params = stoch::ProductionProfileParams {
            plateau_rate: 1.0,
            plateau_length: self.plateau_years,
            decline: self.decline,
        };
        let factor = stoch::production_rate(&params, year);
        factor * (self.oil_rate * oil_price + self.gas_rate * gas_price)
    }
}

/// One region of the system.
#[derive(Clone, Debug)]
pub struct Region {
    pub id: String,
    /// Offshore platform region: gets a heat balance and counts its
    /// platform clusters' loads in the power balance.
    pub platform: bool,
    /// Series names for hourly demand levels; absent means zero demand.
    pub demand_power: Option<String>,
    pub demand_heat: Option<String>,
    pub demand_hydrogen: Option<String>,
    /// Spinning-reserve requirement as a fraction of hourly power demand;
    /// zero disables the reserve row.
    pub reserve_margin: f64,
}

impl Region {
    pub fn new(id: &str) -> Self {
        Region {
            id: id.to_string(),
            platform: false,
            demand_power: None,
            demand_heat: None,
            demand_hydrogen: None,
            reserve_margin: 0.0,
        }
    }
}

/// One admissible conversion of a legacy asset: pay the retrofit cost,
/// flip the source's binary, and capacity accrues on the target entry.
/// Abandonment is a retrofit whose target has no operational capability.
#[derive(Clone, Debug)]
pub struct RetrofitOption {
    pub source: String,
    pub target: String,
    /// Cost per unit of capacity converted.
    pub cost_var: f64,
    /// Lump cost on the conversion indicator.
    pub cost_trigger: f64,
    /// Fixed O&M per unit of converted capacity per year.
    pub fixed_om: f64,
    /// Largest conversion per investment node.
    pub max_convert: f64,
    /// Cap on accumulated converted capacity.
    pub max_acc: f64,
    /// Lifetime of the converted asset in years.
    pub lifetime: f64,
}

/// Per-operational-node economic environment.
#[derive(Clone, Debug)]
pub struct NodeEconomics {
    /// Multiplier on hourly power demand.
    pub demand_power_scale: f64,
    /// Multiplier on hourly hydrogen demand.
    pub demand_hydrogen_scale: f64,
    /// Annual CO2 budget (tonnes per year). Must be finite because it is a
    /// component of the strategic vector; the default is loose enough to
    /// never bind in practice.
    pub emission_budget: f64,
    /// CO2 price applied to emission-weighted dispatch.
    pub co2_price: f64,
    pub oil_price: f64,
    pub gas_price: f64,
}

impl Default for NodeEconomics {
    fn default() -> Self {
        NodeEconomics {
            demand_power_scale: 1.0,
            demand_hydrogen_scale: 1.0,
            emission_budget: 1e9,
            co2_price: 0.0,
            oil_price: 0.0,
            gas_price: 0.0,
        }
    }
}

/// Case-wide scalars.
#[derive(Clone, Debug)]
pub struct CaseScalars {
    /// Years represented by one stage of the tree.
    pub years_per_stage: f64,
    /// Length of the hourly series in the case.
    pub hours: usize,
    /// Seasonal slices sampled from the series.
    pub seasons: usize,
    /// Contiguous hours sampled per season.
    pub hours_per_season: usize,
    /// Number of operational scenarios per node.
    pub scenarios: usize,
    /// Seed for the scenario sampler.
    pub scenario_seed: u64,
    /// Load-shedding penalties per unit short.
    pub shed_power: f64,
    pub shed_heat: f64,
    pub shed_hydrogen: f64,
    /// Default reserve margin for regions that do not override it.
    pub reserve_margin: f64,
    /// Share of production revenue credited against keeping legacy assets.
    pub profit_share: f64,
}

impl Default for CaseScalars {
    fn default() -> Self {
        CaseScalars {
            years_per_stage: 5.0,
            hours: 24,
            seasons: 2,
            hours_per_season: 3,
            scenarios: 1,
            scenario_seed: 1,
            shed_power: 3000.0,
            shed_heat: 1000.0,
            shed_hydrogen: 50_000.0,
            reserve_margin: 0.0,
            profit_share: 1.0,
        }
    }
}

/// A complete case: tree, system data, series, and scalars.
#[derive(Clone, Debug)]
pub struct CaseData {
    pub name: String,
    pub tree: StrategicTree,
    /// Indexed by node id; `Some` exactly on operational nodes.
    pub node_econ: Vec<Option<NodeEconomics>>,
    pub regions: Vec<Region>,
    pub technologies: Vec<Technology>,
    pub retrofits: Vec<RetrofitOption>,
    /// Named hourly series, each exactly `scalars.hours` long.
    pub series: BTreeMap<String, Vec<f64>>,
    pub scalars: CaseScalars,
}

impl CaseData {
    pub fn region(&self, id: &str) -> Option<&Region> {
        self.regions.iter().find(|r| r.id == id)
    }

    pub fn technology(&self, id: &str) -> Option<&Technology> {
        self.technologies.iter().find(|t| t.id == id)
    }

    pub fn series(&self, name: &str) -> Option<&[f64]> {
        self.series.get(name).map(Vec::as_slice)
    }

    /// Technology ids that are retrofit targets, in retrofit-option order.
    pub fn target_ids(&self) -> Vec<&str> {
        self.retrofits.iter().map(|r| r.target.as_str()).collect()
    }

    /// Technologies with legacy capacity, in case order. Each of these can
    /// be taken out of its original service (and, where retrofit options
    /// exist, converted); an entry with no retrofit option models plain
    /// abandonment.
    pub fn source_ids(&self) -> Vec<&str> {
        self.technologies
            .iter()
            .filter(|t| t.hist_legacy > 0.0)
            .map(|t| t.id.as_str())
            .collect()
    }

    /// Technologies that are not retrofit targets, in case order. These are
    /// the entries that can hold ordinary (historical or newly built)
    /// capacity.
    pub fn regular_ids(&self) -> Vec<&str> {
        let targets: BTreeSet<_> = self.retrofits.iter().map(|r| r.target.as_str()).collect();
        self.technologies
            .iter()
            .map(|t| t.id.as_str())
            .filter(|id| !targets.contains(id))
            .collect()
    }

    /// Full structural validation; returns the first problem found.
    pub fn validate(&self) -> Result<(), ReorientError> {
        let data = |msg: String| Err(ReorientError::Data(msg));

        let report = self.tree.validate();
        if !report.violations.is_empty() {
            return data(format!("tree: {}", report.violations[0]));
        }
        if self.node_econ.len() != self.tree.len() {
            return data(format!(
                "{} node economics entries for {} tree nodes",
                self.node_econ.len(),
                self.tree.len()
            ));
        }
        for node in &self.tree.nodes {
            let has = self.node_econ[node.id].is_some();
            match node.kind {
                NodeKind::Operational if !has => {
                    return data(format!("operational node {} has no economics", node.id));
                }
                NodeKind::Investment if has => {
                    return data(format!("investment node {} carries economics", node.id));
                }
                _ => {}
            }
            if let Some(econ) = &self.node_econ[node.id] {
                if node.scenario_weights.len() != self.scalars.scenarios {
                    return data(format!(
                        "node {} has {} scenario weights, case uses {}",
                        node.id,
                        node.scenario_weights.len(),
                        self.scalars.scenarios
                    ));
                }
                for (label, v) in [
                    ("demand_power_scale", econ.demand_power_scale),
                    ("demand_hydrogen_scale", econ.demand_hydrogen_scale),
                    ("co2_price", econ.co2_price),
                    ("oil_price", econ.oil_price),
                    ("gas_price", econ.gas_price),
                ] {
                    if !(v.is_finite() && v >= 0.0) {
                        return data(format!("node {}: {label} = {v} is invalid", node.id));
                    }
                }
                if !(econ.emission_budget >= 0.0 && econ.emission_budget.is_finite()) {
                    return data(format!(
                        "node {}: emission budget {} must be finite and nonnegative",
                        node.id, econ.emission_budget
                    ));
                }
            }
        }

        let s = &self.scalars;
        if !(s.years_per_stage > 0.0 && s.years_per_stage.is_finite()) {
            return data(format!("years_per_stage = {} is invalid", s.years_per_stage));
        }
        if s.hours == 0 || s.seasons == 0 || s.hours_per_season == 0 || s.scenarios == 0 {
            return data("hours, seasons, hours_per_season, and scenarios must be positive".into());
        }
        if s.hours_per_season > s.hours / s.seasons {
            return data(format!(
                "cannot draw {} contiguous hours per season from {} hours in {} seasons",
                s.hours_per_season, s.hours, s.seasons
            ));
        }
        for (label, v) in [
            ("shed_power", s.shed_power),
            ("shed_heat", s.shed_heat),
            ("shed_hydrogen", s.shed_hydrogen),
            ("reserve_margin", s.reserve_margin),
            ("profit_share", s.profit_share),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return data(format!("{label} = {v} is invalid"));
            }
        }

        let mut region_ids = BTreeSet::new();
        for region in &self.regions {
            if !region_ids.insert(region.id.as_str()) {
                return data(format!("region {} appears twice", region.id));
            }
            for series in [&region.demand_power, &region.demand_heat, &region.demand_hydrogen]
                .into_iter()
                .flatten()
            {
                if !self.series.contains_key(series) {
                    return data(format!("region {} references unknown series {series}", region.id));
                }
            }
            if !(region.reserve_margin.is_finite() && region.reserve_margin >= 0.0) {
                return data(format!("region {}: invalid reserve margin", region.id));
            }
        }

        for (name, values) in &self.series {
            if values.len() != s.hours {
                return data(format!(
                    "series {name} has {} values, the case uses {} hours",
                    values.len(),
                    s.hours
                ));
            }
            if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
                return data(format!("series {name} contains a negative or non-finite value"));
            }
        }

        let mut tech_ids = BTreeSet::new();
        for tech in &self.technologies {
            if !tech_ids.insert(tech.id.as_str()) {
                return data(format!("technology {} appears twice", tech.id));
            }
            if tech.class.is_network() {
                let (Some(from), Some(to)) = (&tech.from, &tech.to) else {
                    return data(format!("{} needs both endpoints", tech.id));
                };
                for end in [from, to] {
                    if !region_ids.contains(end.as_str()) {
                        return data(format!("{} endpoint {end} is not a region", tech.id));
                    }
                }
                if from == to {
                    return data(format!("{} connects {from} to itself", tech.id));
                }
                if tech.region.is_some() {
                    return data(format!("{} is a network entry and cannot have a region", tech.id));
                }
            } else {
                let Some(region) = &tech.region else {
                    return data(format!("{} needs a region", tech.id));
                };
                if !region_ids.contains(region.as_str()) {
                    return data(format!("{} is placed in unknown region {region}", tech.id));
                }
                if tech.from.is_some() || tech.to.is_some() {
                    return data(format!("{} is not a network entry and cannot have endpoints", tech.id));
                }
            }
            for (label, v) in [
                ("inv_cost", tech.inv_cost),
                ("trigger_cost", tech.trigger_cost),
                ("fixed_om", tech.fixed_om),
                ("max_inv", tech.max_inv),
                ("hist", tech.hist),
                ("hist_legacy", tech.hist_legacy),
                ("fixed_om_legacy", tech.fixed_om_legacy),
                ("marginal_cost", tech.marginal_cost),
                ("emission", tech.emission),
                ("ramp", tech.ramp),
                ("heat_recovery", tech.heat_recovery),
                ("efficiency", tech.efficiency),
                ("duration", tech.duration),
                ("conversion", tech.conversion),
                ("power_load", tech.power_load),
                ("heat_load", tech.heat_load),
                ("oil_rate", tech.oil_rate),
                ("gas_rate", tech.gas_rate),
                ("plateau_years", tech.plateau_years),
                ("decline", tech.decline),
            ] {
                if !(v >= 0.0) {
                    return data(format!("{}: {label} = {v} is invalid", tech.id));
                }
            }
            if tech.trigger_cost > 0.0 && !tech.max_inv.is_finite() {
                return data(format!(
                    "{}: a trigger cost needs a finite max_inv to gate",
                    tech.id
                ));
            }
            if !(tech.lifetime > 0.0) {
                return data(format!("{}: lifetime must be positive", tech.id));
            }
            if !(tech.max_acc >= 0.0) {
                return data(format!("{}: max_acc must be nonnegative", tech.id));
            }
            if matches!(
                tech.class,
                TechClass::Renewable | TechClass::HydroRor | TechClass::HydroSeasonal
            ) {
                let Some(profile) = &tech.profile else {
                    return data(format!("{} needs a profile series", tech.id));
                };
                if !self.series.contains_key(profile) {
                    return data(format!("{} references unknown series {profile}", tech.id));
                }
            } else if let Some(profile) = &tech.profile {
                if !self.series.contains_key(profile) {
                    return data(format!("{} references unknown series {profile}", tech.id));
                }
            }
            if matches!(tech.class, TechClass::Electrolyser | TechClass::FuelCell)
                && tech.conversion <= 0.0
            {
                return data(format!("{} needs a positive conversion rate", tech.id));
            }
            if tech.class == TechClass::PlatformCluster && tech.max_inv > 0.0 {
                return data(format!("platform cluster {} cannot be investable", tech.id));
            }
            if tech.hist_legacy > 0.0
                && !matches!(
                    tech.class,
                    TechClass::PlatformCluster | TechClass::HydrogenPipeline
                )
            {
                return data(format!(
                    "{}: legacy capacity is only supported on platform clusters and pipelines",
                    tech.id
                ));
            }
            if tech.class == TechClass::ElectricBoiler {
                let platform = tech
                    .region
                    .as_deref()
                    .and_then(|r| self.region(r))
                    .map(|r| r.platform)
                    .unwrap_or(false);
                if !platform {
                    return data(format!(
                        "{} heats a platform process and must sit in a platform region",
                        tech.id
                    ));
                }
            }
        }

        let mut targets = BTreeSet::new();
        for retro in &self.retrofits {
            let Some(source) = self.technology(&retro.source) else {
                return data(format!("retrofit source {} does not exist", retro.source));
            };
            if source.hist_legacy <= 0.0 {
                return data(format!(
                    "retrofit source {} has no legacy capacity to convert",
                    retro.source
                ));
            }
            if !matches!(source.class, TechClass::PlatformCluster | TechClass::HydrogenPipeline) {
                return data(format!(
                    "retrofit source {} must be a platform cluster or a pipeline",
                    retro.source
                ));
            }
            let Some(target) = self.technology(&retro.target) else {
                return data(format!("retrofit target {} does not exist", retro.target));
            };
            if !targets.insert(retro.target.as_str()) {
                return data(format!("retrofit target {} is used twice", retro.target));
            }
            if target.max_inv > 0.0 || target.hist > 0.0 || target.hist_legacy > 0.0 {
                return data(format!(
                    "retrofit target {} must gain capacity through the retrofit alone",
                    retro.target
                ));
            }
            if retro.source == retro.target {
                return data(format!("{} retrofits to itself", retro.source));
            }
            for (label, v) in [
                ("cost_var", retro.cost_var),
                ("cost_trigger", retro.cost_trigger),
                ("fixed_om", retro.fixed_om),
                ("max_convert", retro.max_convert),
                ("max_acc", retro.max_acc),
            ] {
                if !(v.is_finite() && v >= 0.0) && !(label == "max_acc" && v.is_infinite()) {
                    return data(format!(
                        "retrofit {} -> {}: {label} = {v} is invalid",
                        retro.source, retro.target
                    ));
                }
            }
            if !(retro.lifetime > 0.0) {
                return data(format!(
                    "retrofit {} -> {}: lifetime must be positive",
                    retro.source, retro.target
                ));
            }
            if retro.max_convert <= 0.0 {
                return data(format!(
                    "retrofit {} -> {} cannot convert anything",
                    retro.source, retro.target
                ));
            }
        }
        for retro in &self.retrofits {
            if targets.contains(retro.source.as_str()) {
                return data(format!(
                    "{} is both a retrofit target and a source",
                    retro.source
                ));
            }
        }

        Ok(())
    }
}
