//! Scratch: uniform absolute conversion-cost probe on the North Sea case.
use lpcore::{solve_milp, ToleranceConfig};

fn main() {
    let base = reorient::load_case("northsea", reorient::northsea_case()).unwrap();
    for level in [40000.0, 50000.0, 65000.0, 80000.0, 100000.0, 130000.0] {
        let mut case = base.clone();
        for retro in &mut case.retrofits {
            retro.cost_var = level;
        }
        let model = reorient::build_model(&case).unwrap();
        let de = mhsp::monolith(&model.dec);
        let t0 = std::time::Instant::now();
        let sol = solve_milp(&de, &ToleranceConfig::default()).unwrap();
        let mut converted = Vec::new();
        for (j, nm) in de.lp.col_names.iter().enumerate() {
            if nm.starts_with("rety[") && sol.x[j] > 0.5 {
                let flow: f64 = de
                    .lp
                    .col_names
                    .iter()
                    .enumerate()
                    .filter(|(_, n)| n.as_str() == nm.replace("rety[", "ret[").as_str())
                    .map(|(k, _)| sol.x[k])
                    .sum();
                converted.push(format!(
                    "{}:{:.0}",
                    nm.trim_start_matches("rety[").split(']').next().unwrap(),
                    flow
                ));
            }
        }
        println!(
            "level={level}: obj={:.1} count={} [{}] ({:?})",
            sol.objective,
            converted.len(),
            converted.join(" "),
            t0.elapsed()
        );
    }
}
