//! Integrated investment, retrofit, and abandonment planning for regional
//! energy systems on multi-horizon scenario trees.
//!
//! A case couples a strategic tree (investment decisions under long-term
//! price and policy uncertainty) with an hourly dispatch model (power,
//! hydrogen, and platform heat balances over sampled operational
//! scenarios). Legacy assets - offshore platform clusters and gas
//! pipelines - can keep earning production revenue, be converted to a new
//! use such as hydrogen transport, or be abandoned, and the trade-off
//! against new builds is resolved jointly over the whole tree.
//!
//! The compiled form is a [`mhsp::DecomposedProblem`]: a mixed-integer
//! master over capacities and retrofit indicators plus a shared dispatch
//! template bound per operational node. It can be solved monolithically
//! (through [`mhsp::monolith`]) or by decomposition.

pub mod data;
pub mod error;
pub mod layout;
pub mod master;
pub mod model;
pub mod parse;
pub mod subproblem;

pub use data::{
    CaseData, CaseScalars, NodeEconomics, Region, RetrofitOption, TechClass, Technology,
};
pub use error::ReorientError;
pub use layout::{DemandRefs, XLayout};
pub use master::{build_master, MasterModel};
pub use model::{build_model, CaseModel};
pub use parse::load_case;
pub use subproblem::{build_subproblem, draw_sample, shared_scenario_weights};

/// Instantiate one scenario of a template at a strategic point and cost
/// point; dispatch subproblems are bound exactly like any other
/// multi-horizon template.
pub use mhsp::bind_scenario as bind_node;

/// Bundled seven-region North Sea case: onshore demand regions, offshore
/// platform clusters, the existing gas pipeline system as the retrofittable
/// set, and candidate new-build hydrogen infrastructure.
pub fn northsea_case() -> &'static str {
    include_str!("../cases/northsea.case")
}

/// Bundled three-region starter case: two onshore regions, one platform,
/// three stages; small enough for quick experiments.
pub fn toy_case() -> &'static str {
    include_str!("../cases/toy.case")
}
