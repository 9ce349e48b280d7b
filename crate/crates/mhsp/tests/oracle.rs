//! Cross-checks of the flattened deterministic equivalent against
//! exhaustive enumeration, on generated instances small enough for the
//! reference solvers.

use approx::assert_relative_eq;
use lpcore::{solve_milp, SolveStatus, ToleranceConfig};
use mhsp::{deterministic_equivalent, random_instance, GeneratorConfig};
use testkit::{enumerate_milp, Reference};

fn tiny() -> GeneratorConfig {
    GeneratorConfig {
        stages: 2,
        branching: vec![1],
        technologies: 2,
        periods: 2,
        scenarios: 1,
        max_binaries: 4,
    }
}

#[test]
fn deterministic_equivalent_matches_enumeration() {
    let tol = ToleranceConfig::default();
    for seed in 0..8 {
        let problem = random_instance(&tiny(), seed);
        let mip = deterministic_equivalent(&problem).unwrap();
        assert_eq!(mip.binary.len(), 4);

        let got = solve_milp(&mip, &tol).unwrap();
        assert_eq!(got.status, SolveStatus::Optimal, "seed {seed}");
        match enumerate_milp(&mip) {
            Reference::Optimal { objective, .. } => {
                assert_relative_eq!(got.objective, objective, max_relative = 1e-6, epsilon = 1e-7);
            }
            other => panic!("seed {seed}: enumeration returned {other:?}"),
        }
    }
}

#[test]
fn branching_instances_match_enumeration() {
    let tol = ToleranceConfig::default();
    let cfg = GeneratorConfig {
        stages: 2,
        branching: vec![2],
        technologies: 2,
        periods: 2,
        scenarios: 2,
        max_binaries: 6,
    };
    for seed in 100..103 {
        let problem = random_instance(&cfg, seed);
        let mip = deterministic_equivalent(&problem).unwrap();
        assert_eq!(mip.binary.len(), 6);

        let got = solve_milp(&mip, &tol).unwrap();
        assert_eq!(got.status, SolveStatus::Optimal, "seed {seed}");
        match enumerate_milp(&mip) {
            Reference::Optimal { objective, .. } => {
                assert_relative_eq!(got.objective, objective, max_relative = 1e-6, epsilon = 1e-7);
            }
            other => panic!("seed {seed}: enumeration returned {other:?}"),
        }
    }
}

/// The two routes to the monolithic program — direct flattening and
/// decomposition followed by reassembly — must agree at the optimum.
#[test]
fn reassembled_decomposition_matches_direct_flattening() {
    let tol = ToleranceConfig::default();
    for seed in 0..6 {
        let problem = random_instance(&tiny(), 400 + seed);
        let direct = deterministic_equivalent(&problem).unwrap();
        let rebuilt = mhsp::monolith(&mhsp::decompose(&problem).unwrap());
        assert_eq!(direct.lp.num_cols(), rebuilt.lp.num_cols());
        assert_eq!(direct.lp.num_rows(), rebuilt.lp.num_rows());
        let a = solve_milp(&direct, &tol).unwrap();
        let b = solve_milp(&rebuilt, &tol).unwrap();
        assert_eq!(a.status, SolveStatus::Optimal);
        assert_eq!(b.status, SolveStatus::Optimal);
        assert_relative_eq!(a.objective, b.objective, max_relative = 1e-9, epsilon = 1e-9);
    }
}
