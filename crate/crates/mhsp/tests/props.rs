//! Structural invariances of the deterministic equivalent: the optimum
//! must not depend on node labels or on how scenario weight is spread
//! over identical copies.

use approx::assert_relative_eq;
use lpcore::{solve_milp, SolveStatus, ToleranceConfig};
use mhsp::{deterministic_equivalent, random_instance, GeneratorConfig, MHSPProblem};

fn solve(problem: &MHSPProblem) -> f64 {
    let mip = deterministic_equivalent(problem).unwrap();
    let sol = solve_milp(&mip, &ToleranceConfig::default()).unwrap();
    assert_eq!(sol.status, SolveStatus::Optimal);
    sol.objective
}

/// Relabel the nodes so new identifier `i` takes over old node `perm[i]`.
fn relabel(problem: &MHSPProblem, perm: &[usize]) -> MHSPProblem {
    let n = problem.tree.len();
    assert_eq!(perm.len(), n);
    let mut inverse = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        inverse[old] = new;
    }
    let mut out = problem.clone();
    for (new, &old) in perm.iter().enumerate() {
        let mut node = problem.tree.nodes[old].clone();
        node.id = new;
        node.ancestor = node.ancestor.map(|a| inverse[a]);
        out.tree.nodes[new] = node;
        out.strategic[new] = problem.strategic[old].clone();
        out.cost_points[new] = problem.cost_points[old].clone();
    }
    out
}

#[test]
fn node_labels_do_not_change_the_optimum() {
    let cfg = GeneratorConfig {
        stages: 2,
        branching: vec![2],
        technologies: 2,
        periods: 2,
        scenarios: 2,
        max_binaries: 6,
    };
    for seed in 0..5 {
        let problem = random_instance(&cfg, seed);
        let n = problem.tree.len();
        // Keep the root at 0, reverse everything else.
        let mut perm: Vec<usize> = vec![0];
        perm.extend((1..n).rev());
        let permuted = relabel(&problem, &perm);
        permuted.validate().unwrap();
        assert_relative_eq!(solve(&problem), solve(&permuted), max_relative = 1e-9);
    }
}

#[test]
fn splitting_scenario_weight_over_copies_is_neutral() {
    let cfg = GeneratorConfig {
        stages: 2,
        branching: vec![1],
        technologies: 2,
        periods: 2,
        scenarios: 2,
        max_binaries: 4,
    };
    for seed in 40..45 {
        let problem = random_instance(&cfg, seed);
        let mut split = problem.clone();
        let mut copy = split.template[0].clone();
        copy.weight /= 2.0;
        split.template[0].weight = copy.weight;
        split.template.push(copy);
        for node in &mut split.tree.nodes {
            if !node.scenario_weights.is_empty() {
                node.scenario_weights = split.template.iter().map(|s| s.weight).collect();
            }
        }
        split.validate().unwrap();
        assert_relative_eq!(solve(&problem), solve(&split), max_relative = 1e-9);
    }
}
