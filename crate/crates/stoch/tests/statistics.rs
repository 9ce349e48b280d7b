//! Monte Carlo checks of the price process against its closed-form
//! moments, at the published parameter estimates.

use stoch::{build_price_tree, scalar_paths, simulate_stlt, Recursion, STLTParams};

const PATHS: usize = 100_000;
const HORIZON: usize = 30;

#[test]
fn long_term_factor_drifts_at_the_risk_neutral_rate() {
    let params = STLTParams::oil_estimates();
    let sim = simulate_stlt(&params, HORIZON, PATHS, 2024).unwrap();
    let t = HORIZON - 1;
    let samples: Vec<f64> = (0..PATHS).map(|p| sim.xi[p][t] - params.xi0).collect();
    let mean = samples.iter().sum::<f64>() / PATHS as f64;
    let var = samples.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (PATHS - 1) as f64;
    let se = (var / PATHS as f64).sqrt();
    let expected = params.mu_xi * HORIZON as f64 * params.dt;
    assert!(
        (mean - expected).abs() <= 3.0 * se,
        "drift {mean} vs {expected}, standard error {se}"
    );
}

#[test]
fn short_term_factor_variance_reaches_its_stationary_level() {
    let params = STLTParams {
        sigma_xi: 0.0,
        mu_xi: 0.0,
        lambda_chi: 0.0,
        recursion: Recursion::StandardForm,
        ..STLTParams::oil_estimates()
    };
    let sim = simulate_stlt(&params, HORIZON, PATHS, 7).unwrap();
    let t = HORIZON - 1;
    let mean = (0..PATHS).map(|p| sim.chi[p][t]).sum::<f64>() / PATHS as f64;
    let var = (0..PATHS).map(|p| (sim.chi[p][t] - mean).powi(2)).sum::<f64>()
        / (PATHS - 1) as f64;
    let stationary = params.sigma_chi * params.sigma_chi / (2.0 * params.kappa);
    // Sampling error of a normal variance estimate.
    let se = stationary * (2.0 / (PATHS - 1) as f64).sqrt();
    assert!(
        (var - stationary).abs() <= 3.0 * se,
        "variance {var} vs stationary {stationary}, standard error {se}"
    );
}

#[test]
fn driving_normals_carry_the_specified_correlation() {
    let params = STLTParams::oil_estimates();
    let sim = simulate_stlt(&params, 1, PATHS, 99).unwrap();
    // Recover the driving normals from the one-step increments.
    let decay = (-params.kappa * params.dt).exp();
    let vol_chi = params.sigma_chi * ((1.0 - decay * decay) / (2.0 * params.kappa)).sqrt();
    let vol_xi = params.sigma_xi * params.dt.sqrt();
    let drift_chi = -(1.0 - decay) * params.lambda_chi / params.kappa;
    let eps: Vec<(f64, f64)> = (0..PATHS)
        .map(|p| {
            let e_chi = (sim.chi[p][0] - decay * params.chi0 - drift_chi) / vol_chi;
            let e_xi = (sim.xi[p][0] - params.xi0 - params.mu_xi * params.dt) / vol_xi;
            (e_chi, e_xi)
        })
        .collect();
    let n = PATHS as f64;
    let (mx, my) = eps.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x / n, b + y / n));
    let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
    for &(x, y) in &eps {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    let corr = sxy / (sxx.sqrt() * syy.sqrt());
    let se = (1.0 - params.rho * params.rho) / n.sqrt();
    assert!(
        (corr - params.rho).abs() <= 3.0 * se,
        "correlation {corr} vs {}, standard error {se}",
        params.rho
    );
}

#[test]
fn fitted_tree_matches_stage_means_of_the_paths() {
    let params = STLTParams::oil_estimates();
    let sim = simulate_stlt(&params, 3, 10_000, 5).unwrap();
    let prices = sim.prices();
    let (tree, _) = build_price_tree(&scalar_paths(&prices), &[1, 2, 2], 11).unwrap();
    for stage in 0..3 {
        let path_mean: f64 =
            prices.iter().map(|p| p[stage]).sum::<f64>() / prices.len() as f64;
        let tree_mean = tree.stage_mean(stage)[0];
        assert!(
            (tree_mean - path_mean).abs() <= 0.02 * path_mean,
            "stage {stage}: tree mean {tree_mean} vs path mean {path_mean}"
        );
    }
}
