//! Exhaustive reference solver for small mixed-integer programs.

use crate::tableau::{tableau_solve, Reference};
use lpcore::MixedIntegerProgram;

/// Solve by trying every binary assignment and keeping the best.
///
/// Each assignment fixes the binaries through their bounds and hands the
/// remaining program to the reference simplex, so the answer is independent
/// of the production kernel end to end. Exponential in the number of
/// binaries; callers keep that below about a dozen.
pub fn enumerate_milp(mip: &MixedIntegerProgram) -> Reference {
    let k = mip.binary.len();
    assert!(k <= 20, "enumeration over {k} binaries is not sensible");
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut any_feasible = false;

    for mask in 0u32..(1u32 << k) {
        let mut lp = mip.lp.clone();
        for (bit, &j) in mip.binary.iter().enumerate() {
            let v = f64::from((mask >> bit) & 1);
            lp.lower[j] = v;
            lp.upper[j] = v;
        }
        match tableau_solve(&lp) {
            Reference::Infeasible => {}
            Reference::Unbounded => return Reference::Unbounded,
            Reference::Optimal { objective, x } => {
                any_feasible = true;
                let better = match &best {
                    None => true,
                    Some((b, _)) => objective < *b,
                };
                if better {
                    best = Some((objective, x));
                }
            }
        }
    }

    match best {
        Some((objective, x)) => Reference::Optimal { objective, x },
        None => {
            debug_assert!(!any_feasible);
            Reference::Infeasible
        }
    }
}
