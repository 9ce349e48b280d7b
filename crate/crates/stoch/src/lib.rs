//! Uncertainty modelling for multi-horizon planning: a two-factor
//! commodity price process, field production profiles, scenario-tree
//! fitting with export to the strategic-tree schema, operational
//! scenario sampling from hourly series, and location clustering.
//!
//! Every operation that draws randomness takes an explicit seed and is
//! bitwise reproducible.

pub mod error;
pub mod kmeans;
pub mod profile;
pub mod scenarios;
pub mod stlt;
pub mod tree_fit;

pub use error::StochError;
pub use kmeans::{aggregate_weights, kmeans_cluster, Clustering};
pub use profile::{production_rate, ProductionProfileParams};
pub use scenarios::{
    sample_operational_scenarios, OperationalSample, SeriesTable, HOURS_PER_YEAR,
};
pub use stlt::{simulate_stlt, Recursion, STLTParams, StltPaths};
pub use tree_fit::{
    build_price_tree, gas_from_oil, reduce_tree, scalar_paths, to_strategic_tree, PriceNode,
    PriceTree,
};
