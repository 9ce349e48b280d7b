//! Scratch: retrofit-cost sweep on the North Sea case, monolithic solves.
use lpcore::{solve_milp, ToleranceConfig};

fn main() {
    let base = reorient::load_case("northsea", reorient::northsea_case()).unwrap();
    let fracs = [0.05, 0.10, 0.15, 0.20, 0.25, 0.30];
    for frac in fracs {
        let mut case = base.clone();
        for retro in &mut case.retrofits {
            let reference = case
                .technologies
                .iter()
                .find(|t| t.id == retro.target)
                .unwrap()
                .inv_cost;
            retro.cost_var = frac * reference;
        }
        let model = reorient::build_model(&case).unwrap();
        let de = mhsp::monolith(&model.dec);
        let t0 = std::time::Instant::now();
        let sol = solve_milp(&de, &ToleranceConfig::default()).unwrap();
        let mut converted = Vec::new();
        for (j, nm) in de.lp.col_names.iter().enumerate() {
            if nm.starts_with("rety[") && sol.x[j] > 0.5 {
                let flow: f64 = de.lp.col_names.iter().enumerate()
                    .filter(|(_, n)| n.as_str() == nm.replace("rety[", "ret[").as_str())
                    .map(|(k, _)| sol.x[k])
                    .sum();
                converted.push(format!(
                    "{}:{:.0}",
                    nm.trim_start_matches("rety[").split("_h2]").next().unwrap(),
                    flow
                ));
            }
        }
        println!(
            "frac={frac:.2}: obj={:.1} count={} [{}] ({:?}, {} nodes)",
            sol.objective,
            converted.len(),
            converted.join(" "),
            t0.elapsed(),
            sol.stats.nodes
        );
    }
}
