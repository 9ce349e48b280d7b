//! Scratch: solve the North Sea case monolithically, print decisions.
use lpcore::{solve_milp, ToleranceConfig};

fn main() {
    let case = reorient::load_case("northsea", reorient::northsea_case()).unwrap();
    let model = reorient::build_model(&case).unwrap();
    let de = mhsp::monolith(&model.dec);
    let t0 = std::time::Instant::now();
    let sol = solve_milp(&de, &ToleranceConfig::default()).unwrap();
    println!(
        "northsea DE: status={:?} obj={:.1} nodes={} branchings={} lp_iters={} in {:?}",
        sol.status, sol.objective, sol.stats.nodes, sol.stats.branchings,
        sol.stats.lp_iterations, t0.elapsed()
    );
    for (j, nm) in de.lp.col_names.iter().enumerate() {
        if (nm.starts_with("refy") || nm.starts_with("rety") || nm.starts_with("ret[")
            || nm.starts_with("inv[")) && sol.x[j] > 1e-6 {
            println!("  {nm} = {:.4}", sol.x[j]);
        }
    }
}
