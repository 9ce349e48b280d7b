//! Oracle validity against exact subproblem evaluations: the sandwich
//! property, cut validity, fallback behaviour and pool-growth monotonicity,
//! plus finite-difference bracketing of the exact sensitivities.

use benders::{evaluate_exact, lower_bound, upper_bound, SampleSet};
use lpcore::ToleranceConfig;
use mhsp::{decompose, random_instance, DecomposedProblem, GeneratorConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn setup(seed: u64) -> DecomposedProblem {
    let cfg = GeneratorConfig::default();
    decompose(&random_instance(&cfg, seed)).expect("instance decomposes")
}

fn random_x(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim).map(|_| rng.random_range(0.1..5.0)).collect()
}

fn random_c(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut c = vec![1.0; dim];
    for v in c.iter_mut().skip(1) {
        *v = rng.random_range(0.0..2.0);
    }
    c
}

fn grown_pool(dec: &DecomposedProblem, rng: &mut ChaCha8Rng, tol: &ToleranceConfig) -> SampleSet {
    let mut samples =
        SampleSet::bootstrap(&dec.template, dec.x_dim, dec.cost_dim, tol).expect("bootstrap");
    for _ in 0..6 {
        let x = random_x(rng, dec.x_dim);
        let c = random_c(rng, dec.cost_dim);
        samples.push(evaluate_exact(&dec.template, &x, &c, tol).expect("exact"));
    }
    samples
}

#[test]
fn oracle_bounds_sandwich_the_exact_value() {
    let tol = ToleranceConfig::default();
    for seed in 0..3 {
        let dec = setup(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let samples = grown_pool(&dec, &mut rng, &tol);
        for _ in 0..30 {
            let x = random_x(&mut rng, dec.x_dim);
            let c = random_c(&mut rng, dec.cost_dim);
            let exact = evaluate_exact(&dec.template, &x, &c, &tol).expect("exact");
            let lo = lower_bound(&samples, &x, &c, 0.0, &tol);
            let hi = upper_bound(&samples, &x, &c, 1e12, &tol);
            let slack = 1e-6 * (1.0 + exact.value.abs());
            assert!(
                lo.value <= exact.value + slack,
                "lower bound {} exceeds exact value {}",
                lo.value,
                exact.value
            );
            assert!(
                exact.value <= hi + slack,
                "exact value {} exceeds upper bound {}",
                exact.value,
                hi
            );
            assert!(lo.value >= -slack, "lower bound {} fell under the floor", lo.value);
        }
    }
}

#[test]
fn lower_oracle_cuts_support_the_value_function() {
    let tol = ToleranceConfig::default();
    for seed in 0..2 {
        let dec = setup(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + seed);
        let samples = grown_pool(&dec, &mut rng, &tol);
        for _ in 0..10 {
            let x0 = random_x(&mut rng, dec.x_dim);
            let c = random_c(&mut rng, dec.cost_dim);
            let cut = lower_bound(&samples, &x0, &c, 0.0, &tol);
            for _ in 0..5 {
                let x = random_x(&mut rng, dec.x_dim);
                let exact = evaluate_exact(&dec.template, &x, &c, &tol).expect("exact");
                let plane = cut.value
                    + cut
                        .gradient
                        .iter()
                        .zip(x.iter().zip(&x0))
                        .map(|(g, (xi, x0i))| g * (xi - x0i))
                        .sum::<f64>();
                let slack = 1e-6 * (1.0 + exact.value.abs());
                assert!(
                    exact.value >= plane - slack,
                    "cut from {x0:?} overshoots at {x:?}: {} > {}",
                    plane,
                    exact.value
                );
            }
        }
    }
}

#[test]
fn exact_sensitivities_are_bracketed_by_finite_differences() {
    let tol = ToleranceConfig::default();
    for seed in 0..3 {
        let dec = setup(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(3000 + seed);
        let x = random_x(&mut rng, dec.x_dim);
        let c = random_c(&mut rng, dec.cost_dim);
        let p = evaluate_exact(&dec.template, &x, &c, &tol).expect("exact");

        // The value is convex and piecewise linear in x, so the one-sided
        // difference quotients bracket every subgradient component.
        for j in 0..dec.x_dim {
            let delta = 1e-4 * (1.0 + x[j].abs());
            let mut hi = x.clone();
            hi[j] += delta;
            let mut lo = x.clone();
            lo[j] -= delta;
            let up = evaluate_exact(&dec.template, &hi, &c, &tol).expect("exact").value;
            let down = evaluate_exact(&dec.template, &lo, &c, &tol).expect("exact").value;
            let left = (p.value - down) / delta;
            let right = (up - p.value) / delta;
            let slack = 1e-6 * (1.0 + p.x_grad[j].abs());
            assert!(
                left - slack <= p.x_grad[j] && p.x_grad[j] <= right + slack,
                "x-sensitivity {} outside difference bracket [{left}, {right}] (component {j})",
                p.x_grad[j]
            );
        }

        // Concavity in c flips the bracket.
        for k in 0..dec.cost_dim {
            let delta = 1e-4 * (1.0 + c[k].abs());
            let mut hi = c.clone();
            hi[k] += delta;
            let mut lo = c.clone();
            lo[k] = (lo[k] - delta).max(0.0);
            let shrink = c[k] - lo[k];
            let up = evaluate_exact(&dec.template, &x, &hi, &tol).expect("exact").value;
            let down = evaluate_exact(&dec.template, &x, &lo, &tol).expect("exact").value;
            let right = (up - p.value) / delta;
            let slack = 1e-6 * (1.0 + p.c_grad[k].abs());
            assert!(
                p.c_grad[k] >= right - slack,
                "c-sensitivity {} under the right difference quotient {right} (component {k})",
                p.c_grad[k]
            );
            if shrink > 0.0 {
                let left = (p.value - down) / shrink;
                assert!(
                    p.c_grad[k] <= left + slack,
                    "c-sensitivity {} over the left difference quotient {left} (component {k})",
                    p.c_grad[k]
                );
            }
        }
    }
}

#[test]
fn oracles_fall_back_gracefully_on_a_fresh_pool() {
    let tol = ToleranceConfig::default();
    let dec = setup(0);
    let samples =
        SampleSet::bootstrap(&dec.template, dec.x_dim, dec.cost_dim, &tol).expect("bootstrap");
    let mut rng = ChaCha8Rng::seed_from_u64(4000);
    for _ in 0..10 {
        let x = random_x(&mut rng, dec.x_dim);
        let c = random_c(&mut rng, dec.cost_dim);
        // Only the origin sample exists: the lower oracle must return the
        // floor with a flat gradient, and the upper oracle must still give
        // a finite certified bound thanks to the origin sample.
        let lo = lower_bound(&samples, &x, &c, 0.0, &tol);
        assert_eq!(lo.value, 0.0);
        assert!(lo.gradient.iter().all(|g| *g == 0.0));
        let hi = upper_bound(&samples, &x, &c, 1e12, &tol);
        assert!(hi < 1e12, "origin sample should certify a finite upper bound");
        let exact = evaluate_exact(&dec.template, &x, &c, &tol).expect("exact");
        assert!(exact.value <= hi + 1e-6 * (1.0 + exact.value.abs()));
    }
}

#[test]
fn bounds_tighten_monotonically_as_the_pool_grows() {
    let tol = ToleranceConfig::default();
    let dec = setup(1);
    let mut rng = ChaCha8Rng::seed_from_u64(5000);
    let x_query = random_x(&mut rng, dec.x_dim);
    let c_query = random_c(&mut rng, dec.cost_dim);
    let mut samples =
        SampleSet::bootstrap(&dec.template, dec.x_dim, dec.cost_dim, &tol).expect("bootstrap");
    let mut best_lo = f64::NEG_INFINITY;
    let mut best_hi = f64::INFINITY;
    for _ in 0..8 {
        let x = random_x(&mut rng, dec.x_dim);
        let c = random_c(&mut rng, dec.cost_dim);
        samples.push(evaluate_exact(&dec.template, &x, &c, &tol).expect("exact"));
        let lo = lower_bound(&samples, &x_query, &c_query, 0.0, &tol).value;
        let hi = upper_bound(&samples, &x_query, &c_query, 1e12, &tol);
        let slack = 1e-8 * (1.0 + lo.abs().max(hi.abs()));
        assert!(lo >= best_lo - slack, "lower bound slipped from {best_lo} to {lo}");
        assert!(hi <= best_hi + slack, "upper bound slipped from {best_hi} to {hi}");
        best_lo = best_lo.max(lo);
        best_hi = best_hi.min(hi);
    }
    assert!(best_lo <= best_hi + 1e-8 * (1.0 + best_hi.abs()));
}
