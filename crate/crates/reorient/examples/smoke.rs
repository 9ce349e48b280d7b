//! Scratch: load the bundled cases, report model sizes, solve the toy case.

use lpcore::{solve_milp, solve_lp, SolveStatus, ToleranceConfig};
use reorient::{build_model, load_case, bind_node};

fn main() {
    for (name, text) in [("toy", reorient::toy_case()), ("northsea", reorient::northsea_case())] {
        let case = match load_case(name, text) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("{name}: load error: {e}");
                std::process::exit(1);
            }
        };
        let model = match build_model(&case) {
            Ok(m) => m,
            Err(e) => {
                eprintln!("{name}: model error: {e}");
                std::process::exit(1);
            }
        };
        let dec = &model.dec;
        println!(
            "{name}: x_dim={} master {}x{} binaries={} nodes={} scenarios={} template {}x{}",
            dec.x_dim,
            dec.master.lp.a.rows(),
            dec.master.lp.a.cols(),
            dec.master.binary.len(),
            dec.nodes.len(),
            dec.template.len(),
            dec.template[0].w.rows(),
            dec.template[0].w.cols(),
        );

        // All-zero strategic vector must be dispatch-feasible.
        let zeros = vec![0.0; dec.x_dim];
        let cost = vec![1.0, 100.0];
        let lp = bind_node(&dec.template[0], &zeros, &cost);
        let tol = ToleranceConfig::default();
        let sol = solve_lp(&lp, &tol).expect("dispatch at zero");
        println!("  dispatch at x=0: status={:?} cost={:.3}", sol.status, sol.objective);

        let de = mhsp::monolith(dec);
        println!("  monolith: {} cols, {} rows", de.lp.a.cols(), de.lp.a.rows());
        if name == "toy" {
            let t0 = std::time::Instant::now();
            let sol = solve_milp(&de, &tol).expect("toy monolith");
            println!(
                "  toy DE: status={:?} objective={:.3} nodes={} in {:?}",
                sol.status,
                sol.objective,
                sol.stats.nodes,
                t0.elapsed()
            );
            assert_eq!(sol.status, SolveStatus::Optimal);
            for (j, nm) in de.lp.col_names.iter().enumerate() {
                if (nm.starts_with("refy") || nm.starts_with("rety") || nm.starts_with("ret["))
                    && sol.x[j] > 1e-6
                {
                    println!("    {nm} = {:.4}", sol.x[j]);
                }
            }
            for (j, nm) in de.lp.col_names.iter().enumerate() {
                if nm.starts_with("inv[") && sol.x[j] > 1e-6 {
                    println!("    {nm} = {:.4}", sol.x[j]);
                }
            }
        }
    }
}
