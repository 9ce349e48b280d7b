//! End-to-end convergence of both decomposition drivers against the
//! deterministic equivalent, bound monotonicity, budget handling, and the
//! evaluation-count advantage of the oracle-driven driver.

use benders::{run_enhanced, run_standard, AlgorithmConfig, TerminationStatus};
use lpcore::{solve_milp, SolveStatus, ToleranceConfig};
use mhsp::{decompose, monolith, random_instance, DecomposedProblem, GeneratorConfig};

fn setup(seed: u64) -> DecomposedProblem {
    let cfg = GeneratorConfig::default();
    decompose(&random_instance(&cfg, seed)).expect("instance decomposes")
}

fn exact_optimum(dec: &DecomposedProblem) -> f64 {
    let sol = solve_milp(&monolith(dec), &ToleranceConfig::default()).expect("monolith solves");
    assert_eq!(sol.status, SolveStatus::Optimal);
    sol.objective
}

#[test]
fn enhanced_matches_the_deterministic_equivalent() {
    for seed in 0..5 {
        let dec = setup(seed);
        let truth = exact_optimum(&dec);
        let sol = run_enhanced(&dec, &AlgorithmConfig::default()).expect("run");
        assert_eq!(sol.status, TerminationStatus::Converged, "seed {seed}");
        let slack = 1e-5 * (1.0 + truth.abs());
        assert!(
            (sol.objective - truth).abs() <= slack,
            "seed {seed}: {} vs exact {truth}",
            sol.objective
        );
        assert!(sol.lower_bound <= truth + slack, "seed {seed}: lower bound overshoots");
        assert!(truth <= sol.objective + slack, "seed {seed}: upper bound undershoots");
    }
}

#[test]
fn standard_matches_the_deterministic_equivalent() {
    for seed in 0..3 {
        let dec = setup(seed);
        let truth = exact_optimum(&dec);
        let sol = run_standard(&dec, &AlgorithmConfig::default()).expect("run");
        assert_eq!(sol.status, TerminationStatus::Converged, "seed {seed}");
        let slack = 1e-5 * (1.0 + truth.abs());
        assert!(
            (sol.objective - truth).abs() <= slack,
            "seed {seed}: {} vs exact {truth}",
            sol.objective
        );
    }
}

#[test]
fn three_stage_instance_converges() {
    let cfg = GeneratorConfig { stages: 3, branching: vec![2, 2], ..GeneratorConfig::default() };
    let dec = decompose(&random_instance(&cfg, 42)).expect("decomposes");
    let truth = exact_optimum(&dec);
    let sol = run_enhanced(&dec, &AlgorithmConfig::default()).expect("run");
    assert_eq!(sol.status, TerminationStatus::Converged);
    assert!((sol.objective - truth).abs() <= 1e-5 * (1.0 + truth.abs()));
}

#[test]
fn bound_sequences_are_monotone() {
    let dec = setup(7);
    let sol = run_enhanced(&dec, &AlgorithmConfig::default()).expect("run");
    let mut prev_lower = f64::NEG_INFINITY;
    let mut prev_upper = f64::INFINITY;
    for rec in &sol.log.iterations {
        let slack = 1e-9 * (1.0 + rec.upper.abs());
        assert!(rec.lower >= prev_lower - slack, "lower bound regressed");
        assert!(rec.upper <= prev_upper + slack, "upper bound regressed");
        assert!(rec.lower <= rec.upper + slack, "bounds crossed");
        prev_lower = rec.lower;
        prev_upper = rec.upper;
    }
}

#[test]
fn enhanced_needs_no_more_exact_solves_than_standard() {
    let mut enhanced = Vec::new();
    let mut standard = Vec::new();
    for seed in 0..9 {
        let dec = setup(seed);
        let cfg = AlgorithmConfig { epsilon_rel: 1e-5, ..AlgorithmConfig::default() };
        enhanced.push(run_enhanced(&dec, &cfg).expect("run").log.exact_solves as f64);
        standard.push(run_standard(&dec, &cfg).expect("run").log.exact_solves as f64);
    }
    let median = |v: &mut Vec<f64>| -> f64 {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v[v.len() / 2]
    };
    let me = median(&mut enhanced);
    let ms = median(&mut standard);
    assert!(me <= ms, "median exact solves: enhanced {me} vs standard {ms}");
}

#[test]
fn iteration_budget_returns_partial_bounds() {
    let dec = setup(3);
    let cfg = AlgorithmConfig { max_iterations: 1, ..AlgorithmConfig::default() };
    let sol = run_enhanced(&dec, &cfg).expect("run");
    assert_eq!(sol.status, TerminationStatus::IterationLimit);
    assert_eq!(sol.log.iterations.len(), 1);
    assert!(sol.lower_bound <= sol.objective);
    assert!(sol.objective < 1e12, "one iteration must already certify a finite upper bound");
}

#[test]
fn level_parameter_extremes_still_converge() {
    let dec = setup(5);
    let truth = exact_optimum(&dec);
    for gamma in [1e-6, 0.999] {
        let cfg = AlgorithmConfig { gamma, ..AlgorithmConfig::default() };
        let sol = run_enhanced(&dec, &cfg).expect("run");
        assert_eq!(sol.status, TerminationStatus::Converged, "gamma {gamma}");
        assert!(
            (sol.objective - truth).abs() <= 1e-5 * (1.0 + truth.abs()),
            "gamma {gamma}: {} vs {truth}",
            sol.objective
        );
    }
}

#[test]
fn rejects_invalid_configuration() {
    let dec = setup(0);
    for bad in [
        AlgorithmConfig { gamma: 0.0, ..AlgorithmConfig::default() },
        AlgorithmConfig { gamma: 1.0, ..AlgorithmConfig::default() },
        AlgorithmConfig { max_iterations: 0, ..AlgorithmConfig::default() },
        AlgorithmConfig { value_cap: -1.0, ..AlgorithmConfig::default() },
        AlgorithmConfig { epsilon: -1e-3, ..AlgorithmConfig::default() },
    ] {
        assert!(run_enhanced(&dec, &bad).is_err());
    }
}
