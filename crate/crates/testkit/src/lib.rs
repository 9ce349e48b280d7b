//! Reference solvers and random instance generators for the test suites.
//!
//! Nothing in this crate is fast, clever, or shared with the production
//! code paths — that is the point. The tableau simplex and the exhaustive
//! binary enumeration provide independently derived answers; the generators
//! plant interior points so the expected status of an instance is known by
//! construction.

pub mod enumerate;
pub mod generate;
pub mod tableau;

pub use enumerate::enumerate_milp;
pub use generate::{random_lp, random_milp, random_polytope, LpShape};
pub use tableau::{tableau_solve, Reference};
