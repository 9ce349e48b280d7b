use benders::{run_enhanced, run_standard, AlgorithmConfig};
use mhsp::{decompose, random_instance, GeneratorConfig};
use lpcore::{solve_milp, ToleranceConfig};

fn main() {
    let cfg = GeneratorConfig::default();
    let dec = decompose(&random_instance(&cfg, 0)).unwrap();
    let t0 = std::time::Instant::now();
    let truth = solve_milp(&mhsp::monolith(&dec), &ToleranceConfig::default()).unwrap().objective;
    println!("DE: {truth:.6} in {:?}", t0.elapsed());
    let acfg = AlgorithmConfig { max_iterations: 40, ..AlgorithmConfig::default() };
    let t0 = std::time::Instant::now();
    let sol = run_enhanced(&dec, &acfg).unwrap();
    println!("enhanced: status={:?} U={:.6} L={:.6} iters={} exact={} in {:?}",
        sol.status, sol.objective, sol.lower_bound, sol.log.iterations.len(), sol.log.exact_solves, t0.elapsed());
    for r in sol.log.iterations.iter().take(40) {
        println!("  it {} L={:.6} U={:.6} candL={:.3} candU={:.3} gamma={:.3} exit={} exact={} t_rmp={:.3} t_cp={:.3} t_or={:.3} t_ex={:.3}",
            r.iteration, r.lower, r.upper, r.candidate_lower, r.candidate_upper, r.gamma, r.inner_exit.as_str(), r.exact_solves,
            r.master_seconds, r.centre_seconds, r.oracle_seconds, r.exact_seconds);
    }
    let t0 = std::time::Instant::now();
    let sol = run_standard(&dec, &acfg).unwrap();
    println!("standard: status={:?} U={:.6} L={:.6} iters={} exact={} in {:?}",
        sol.status, sol.objective, sol.lower_bound, sol.log.iterations.len(), sol.log.exact_solves, t0.elapsed());
}
