//! Cross-checks of the production kernel against independent references:
//! a full-tableau simplex, exhaustive binary enumeration, finite-difference
//! dual estimates, and direct substitution of Chebyshev centres.

use lpcore::{
    chebyshev_center, duality_gap, solve_lp, solve_milp, LinearProgram, Sense, SolveStatus,
    ToleranceConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testkit::{enumerate_milp, random_lp, random_milp, random_polytope, LpShape, Reference};

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn assert_primal_feasible(lp: &LinearProgram, x: &[f64]) {
    for j in 0..lp.num_cols() {
        assert!(x[j] >= lp.lower[j] - 1e-6, "column {j} below bound");
        assert!(x[j] <= lp.upper[j] + 1e-6, "column {j} above bound");
    }
    for i in 0..lp.num_rows() {
        let lhs: f64 = (0..lp.num_cols()).map(|j| lp.a.get(i, j) * x[j]).sum();
        let slack = lp.rhs[i] - lhs;
        let scale = 1e-6 * (1.0 + lp.rhs[i].abs());
        match lp.senses[i] {
            Sense::Le => assert!(slack >= -scale, "row {i} violated by {}", -slack),
            Sense::Ge => assert!(slack <= scale, "row {i} violated by {slack}"),
            Sense::Eq => assert!(slack.abs() <= scale, "row {i} off by {slack}"),
        }
    }
}

#[test]
fn random_lps_match_the_tableau_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    let mut optimal = 0;
    let mut infeasible = 0;
    let mut unbounded = 0;
    for case in 0..200 {
        let shape = LpShape {
            cols: rng.random_range(3..12),
            rows: rng.random_range(2..10),
            open_share: 0.15,
            plant_feasible: case % 4 != 3,
        };
        let lp = random_lp(&mut rng, shape);
        let ours = solve_lp(&lp, &tol()).unwrap();
        let reference = testkit::tableau_solve(&lp);
        match (&ours.status, &reference) {
            (SolveStatus::Optimal, Reference::Optimal { objective, .. }) => {
                optimal += 1;
                let gap = (ours.objective - objective).abs();
                assert!(
                    gap <= 1e-7 * (1.0 + objective.abs()),
                    "case {case}: objective {} vs reference {objective}",
                    ours.objective
                );
                assert_primal_feasible(&lp, &ours.x);
            }
            (SolveStatus::Infeasible, Reference::Infeasible) => infeasible += 1,
            (SolveStatus::Unbounded, Reference::Unbounded) => unbounded += 1,
            (a, b) => panic!("case {case}: status disagreement {a:?} vs {b:?}"),
        }
    }
    // The generator should exercise every status, heavily favouring optima.
    assert!(optimal >= 140, "only {optimal} optimal instances");
    assert!(infeasible > 0 && unbounded > 0, "statuses not exercised: {infeasible}/{unbounded}");
}

#[test]
fn random_milps_match_exhaustive_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(902);
    for case in 0..100 {
        let shape = LpShape {
            cols: rng.random_range(4..9),
            rows: rng.random_range(2..7),
            open_share: 0.0,
            plant_feasible: true,
        };
        let binaries = rng.random_range(1..=shape.cols.min(8));
        let mip = random_milp(&mut rng, shape, binaries);
        let ours = solve_milp(&mip, &tol()).unwrap();
        let reference = enumerate_milp(&mip);
        match (&ours.status, &reference) {
            (SolveStatus::Optimal, Reference::Optimal { objective, .. }) => {
                let gap = (ours.objective - objective).abs();
                assert!(
                    gap <= 1e-7 * (1.0 + objective.abs()),
                    "case {case}: objective {} vs enumeration {objective}",
                    ours.objective
                );
                assert_primal_feasible(&mip.lp, &ours.x);
                for &j in &mip.binary {
                    assert!(ours.x[j] == 0.0 || ours.x[j] == 1.0, "case {case}: fractional binary");
                }
            }
            (SolveStatus::Infeasible, Reference::Infeasible) => {}
            (a, b) => panic!("case {case}: status disagreement {a:?} vs {b:?}"),
        }
    }
}

#[test]
fn chebyshev_centres_satisfy_every_row_with_margin() {
    let mut rng = ChaCha8Rng::seed_from_u64(903);
    for case in 0..100 {
        let cols = rng.random_range(2..7);
        let extra = rng.random_range(1..8);
        let lp = random_polytope(&mut rng, cols, extra);
        let ball = chebyshev_center(&lp, &tol())
            .unwrap_or_else(|e| panic!("case {case}: centre failed: {e}"));
        assert!(ball.radius > 0.0, "case {case}: planted interior lost");

        // Substitute the centre into every constraint, bounds included:
        // the slack must cover a ball of the reported radius, and at the
        // optimum the radius equals the tightest scaled slack.
        let mut tightest = f64::INFINITY;
        let mut check = |g: &[f64], h: f64| {
            let norm: f64 = g.iter().map(|v| v * v).sum::<f64>().sqrt();
            let slack = h - g.iter().zip(&ball.center).map(|(a, x)| a * x).sum::<f64>();
            assert!(
                slack >= ball.radius * norm - 1e-7,
                "case {case}: slack {slack} cannot hold radius {} at norm {norm}",
                ball.radius
            );
            tightest = tightest.min(slack / norm);
        };
        for i in 0..lp.num_rows() {
            let row = lp.a.row(i).to_vec();
            match lp.senses[i] {
                Sense::Le => check(&row, lp.rhs[i]),
                Sense::Ge => check(&row.iter().map(|v| -v).collect::<Vec<_>>(), -lp.rhs[i]),
                Sense::Eq => unreachable!("generator emits inequalities only"),
            }
        }
        for j in 0..cols {
            let mut g = vec![0.0; cols];
            g[j] = 1.0;
            check(&g, lp.upper[j]);
            g[j] = -1.0;
            check(&g, -lp.lower[j]);
        }
        assert!(
            (tightest - ball.radius).abs() <= 1e-6 * (1.0 + ball.radius),
            "case {case}: radius {} is not the tightest slack {tightest}",
            ball.radius
        );
    }
}

#[test]
fn duals_match_finite_differences_of_the_value_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(904);
    let mut checked = 0;
    for _ in 0..30 {
        let shape = LpShape {
            cols: rng.random_range(4..9),
            rows: rng.random_range(2..6),
            open_share: 0.0,
            plant_feasible: true,
        };
        let lp = random_lp(&mut rng, shape);
        let base = solve_lp(&lp, &tol()).unwrap();
        if base.status != SolveStatus::Optimal {
            continue;
        }
        let h = 1e-5;
        for i in 0..lp.num_rows() {
            let mut plus = lp.clone();
            plus.rhs[i] += h;
            let mut minus = lp.clone();
            minus.rhs[i] -= h;
            let up = solve_lp(&plus, &tol()).unwrap();
            let dn = solve_lp(&minus, &tol()).unwrap();
            if up.status != SolveStatus::Optimal || dn.status != SolveStatus::Optimal {
                continue;
            }
            let fd = (up.objective - dn.objective) / (2.0 * h);
            // Central differences straddle kinks of the piecewise-linear
            // value function; skip rows where the two sides disagree.
            let left = (base.objective - dn.objective) / h;
            let right = (up.objective - base.objective) / h;
            if (left - right).abs() > 1e-4 * (1.0 + fd.abs()) {
                continue;
            }
            checked += 1;
            assert!(
                (fd - base.duals[i]).abs() <= 1e-4 * (1.0 + fd.abs()),
                "row {i}: dual {} vs finite difference {fd}",
                base.duals[i]
            );
        }
    }
    assert!(checked >= 40, "only {checked} dual comparisons were conclusive");
}

#[test]
fn strong_duality_holds_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(905);
    for _ in 0..60 {
        let shape = LpShape {
            cols: rng.random_range(3..10),
            rows: rng.random_range(2..8),
            open_share: 0.1,
            plant_feasible: true,
        };
        let lp = random_lp(&mut rng, shape);
        let sol = solve_lp(&lp, &tol()).unwrap();
        if sol.status == SolveStatus::Optimal {
            let gap = duality_gap(&lp, &sol);
            assert!(gap <= 1e-6 * (1.0 + sol.objective.abs()), "duality gap {gap}");
        }
    }
}

#[test]
fn repeated_solves_are_bitwise_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(906);
    let lp = random_lp(
        &mut rng,
        LpShape { cols: 10, rows: 8, open_share: 0.1, plant_feasible: true },
    );
    let a = solve_lp(&lp, &tol()).unwrap();
    let b = solve_lp(&lp, &tol()).unwrap();
    assert_eq!(a.objective.to_bits(), b.objective.to_bits());
    for (x, y) in a.x.iter().zip(&b.x) {
        assert_eq!(x.to_bits(), y.to_bits());
    }
    for (x, y) in a.duals.iter().zip(&b.duals) {
        assert_eq!(x.to_bits(), y.to_bits());
    }
}
