//! Structural properties the solver must preserve on arbitrary instances.

use lpcore::{solve_lp, LinearProgram, SolveStatus, ToleranceConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use testkit::{random_lp, LpShape};

fn instance(seed: u64) -> LinearProgram {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = LpShape {
        cols: rng.random_range(3..9),
        rows: rng.random_range(2..7),
        open_share: 0.1,
        plant_feasible: true,
    };
    random_lp(&mut rng, shape)
}

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    /// Scaling the objective scales the optimum and nothing else.
    #[test]
    fn objective_scales_linearly(seed in any::<u64>(), lambda in 0.1f64..10.0) {
        let lp = instance(seed);
        let base = solve_lp(&lp, &tol()).unwrap();
        let mut scaled = lp.clone();
        for c in &mut scaled.objective {
            *c *= lambda;
        }
        let after = solve_lp(&scaled, &tol()).unwrap();
        prop_assert_eq!(base.status, after.status);
        if base.status == SolveStatus::Optimal {
            let expect = lambda * base.objective;
            prop_assert!(
                (after.objective - expect).abs() <= 1e-6 * (1.0 + expect.abs()),
                "{} vs {}", after.objective, expect
            );
        }
    }

    /// The optimum must not depend on the order rows are listed in.
    #[test]
    fn row_order_is_irrelevant(seed in any::<u64>(), rot in 1usize..7) {
        let lp = instance(seed);
        let m = lp.num_rows();
        let mut rotated = lp.clone();
        for i in 0..m {
            let src = (i + rot) % m;
            for j in 0..lp.num_cols() {
                rotated.a.set(i, j, lp.a.get(src, j));
            }
            rotated.senses[i] = lp.senses[src];
            rotated.rhs[i] = lp.rhs[src];
            rotated.row_names[i] = lp.row_names[src].clone();
        }
        let base = solve_lp(&lp, &tol()).unwrap();
        let after = solve_lp(&rotated, &tol()).unwrap();
        prop_assert_eq!(base.status, after.status);
        if base.status == SolveStatus::Optimal {
            prop_assert!(
                (after.objective - base.objective).abs()
                    <= 1e-7 * (1.0 + base.objective.abs()),
                "{} vs {}", after.objective, base.objective
            );
        }
    }

    /// Tightening a bound can only hurt a minimisation, never help it.
    #[test]
    fn tightening_a_bound_never_improves(seed in any::<u64>(), frac in 0.1f64..0.9) {
        let lp = instance(seed);
        let base = solve_lp(&lp, &tol()).unwrap();
        if base.status != SolveStatus::Optimal {
            return Ok(());
        }
        let mut tight = lp.clone();
        let j = (seed as usize) % lp.num_cols();
        if !tight.upper[j].is_finite() || !tight.lower[j].is_finite() {
            return Ok(());
        }
        tight.upper[j] = tight.lower[j] + frac * (tight.upper[j] - tight.lower[j]);
        let after = solve_lp(&tight, &tol()).unwrap();
        match after.status {
            SolveStatus::Infeasible => {}
            SolveStatus::Optimal => prop_assert!(
                after.objective >= base.objective - 1e-6 * (1.0 + base.objective.abs()),
                "{} undercut {}", after.objective, base.objective
            ),
            SolveStatus::Unbounded => prop_assert!(false, "tightening created a ray"),
        }
    }
}
