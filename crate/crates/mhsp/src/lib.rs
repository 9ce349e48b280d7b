//! Multi-horizon stochastic programs over strategic scenario trees.
//!
//! A strategic tree alternates investment nodes (here-and-now decisions
//! with arbitrary linking constraints to their ancestor) and operational
//! nodes (whose strategic vector parameterises a weighted set of
//! short-term dispatch scenarios drawn from a shared template). The crate
//! offers two equivalent views of the same problem:
//!
//! * [`flatten::deterministic_equivalent`] assembles the full
//!   mixed-integer program over every node and scenario, suitable for a
//!   direct solve and used as the reference in cross-validation;
//! * [`decompose::decompose`] splits the problem into a master over the
//!   strategic columns plus per-node scenario subproblems, the form
//!   consumed by the decomposition algorithms.
//!
//! [`generator::random_instance`] produces randomised capacity-expansion
//! instances with the structural properties (monotone, concave subproblem
//! values; nonnegative cost rows) the decomposition relies on.

pub mod decompose;
pub mod error;
pub mod flatten;
pub mod generator;
pub mod problem;
pub mod tree;

pub use decompose::{bind_scenario, decompose, monolith, DecomposedProblem, NodeBinding};
pub use error::MhspError;
pub use flatten::deterministic_equivalent;
pub use generator::{random_instance, GeneratorConfig};
pub use problem::{MHSPProblem, ScenarioBlock, StrategicBlock};
pub use tree::{NodeKind, StrategicNode, StrategicTree, ValidationReport};
