//! Decomposition solvers for multi-horizon stochastic programs.
//!
//! Both drivers work on the master/subproblem split produced by
//! [`mhsp::decompose`] and return certified bounds, an incumbent strategic
//! decision and a per-iteration log:
//!
//! * [`run_standard`] — classic multi-cut Benders. Every iteration solves
//!   each node's expected dispatch problem exactly at the master proposal
//!   and adds one cut per node.
//! * [`run_enhanced`] — the same master loop, evaluated through a pair of
//!   adaptive value oracles over a shared sample pool, with cuts generated
//!   at a level-set centre point instead of the master optimum. Exact
//!   solves are spent one node at a time, only where the oracle sandwich is
//!   widest, and every solve tightens the bounds of all nodes at once.
//!
//! The oracles rest on structure the [`mhsp`] problem class guarantees: the
//! expected dispatch value is convex and nonincreasing in the strategic
//! vector, and concave, positively homogeneous and nondecreasing in the
//! cost point.

pub mod algorithm;
pub mod error;
pub mod log;
pub mod oracle;
pub mod rmp;
pub mod sample;

pub use algorithm::{run_enhanced, run_standard, AlgorithmConfig, BendersSolution};
pub use error::BendersError;
pub use log::{InnerExit, IterationRecord, RunLog, TerminationStatus};
pub use oracle::{lower_bound, upper_bound, LowerBound};
pub use rmp::Cut;
pub use sample::{evaluate_exact, SamplePoint, SampleSet};
