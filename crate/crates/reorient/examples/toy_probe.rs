//! Scratch: compare the toy optimum with and without the gas pipe's
//! node-3 indicator, and print the strategic columns that differ.

use lpcore::{solve_milp, SolveStatus, ToleranceConfig};
use reorient::{build_model, load_case};

fn main() {
    let case = load_case("toy", reorient::toy_case()).expect("load");
    let model = build_model(&case).expect("model");
    let tol = ToleranceConfig::default();

    let de = mhsp::monolith(&model.dec);
    let base = solve_milp(&de, &tol).expect("solve");
    assert_eq!(base.status, SolveStatus::Optimal);
    println!("free optimum: {:.3}", base.objective);

    let col = de
        .lp
        .col_names
        .iter()
        .position(|n| n == "refy[gaspipe]@n3")
        .expect("column exists");
    let mut pinned = de.clone();
    pinned.lp.upper[col] = 0.0;
    let fixed = solve_milp(&pinned, &tol).expect("solve pinned");
    assert_eq!(fixed.status, SolveStatus::Optimal);
    println!("pinned refy[gaspipe]@n3=0: {:.3}", fixed.objective);
    println!("difference: {:.3}", fixed.objective - base.objective);

    for (j, nm) in de.lp.col_names.iter().enumerate() {
        let a = base.x[j];
        let b = fixed.x[j];
        if (a - b).abs() > 1e-5
            && (nm.starts_with("refy")
                || nm.starts_with("rety")
                || nm.starts_with("ret[")
                || nm.starts_with("retired")
                || nm.starts_with("accref")
                || nm.starts_with("cinv"))
        {
            println!("  {nm}: free={a:.4} pinned={b:.4}");
        }
    }
}
