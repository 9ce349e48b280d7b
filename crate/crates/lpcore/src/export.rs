//! Plain-text rendering of programs and solutions, for logs and debugging.

use crate::problem::{LinearProgram, LpSolution, MixedIntegerProgram};

fn num(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e12 {
        format!("{v:.0}")
    } else {
        format!("{v:.6}")
    }
}

fn bound(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".into()
    } else if v == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        num(v)
    }
}

/// Human-readable listing of a linear program, one row per line.
pub fn render_lp(lp: &LinearProgram) -> String {
    let mut out = String::new();
    out.push_str("minimize\n ");
    let mut any = false;
    for (j, &c) in lp.objective.iter().enumerate() {
        if c != 0.0 {
            out.push_str(&format!(" {} {}", signed(c, any), lp.col_name(j)));
            any = true;
        }
    }
    if !any {
        out.push_str(" 0");
    }
    out.push_str("\nsubject to\n");
    for i in 0..lp.num_rows() {
        out.push_str(&format!("  {}:", lp.row_name(i)));
        let mut first = true;
        for j in 0..lp.num_cols() {
            let v = lp.a.get(i, j);
            if v != 0.0 {
                out.push_str(&format!(" {} {}", signed(v, !first), lp.col_name(j)));
                first = false;
            }
        }
        if first {
            out.push_str(" 0");
        }
        out.push_str(&format!(" {} {}\n", lp.senses[i].symbol(), num(lp.rhs[i])));
    }
    out.push_str("bounds\n");
    for j in 0..lp.num_cols() {
        out.push_str(&format!(
            "  {} <= {} <= {}\n",
            bound(lp.lower[j]),
            lp.col_name(j),
            bound(lp.upper[j])
        ));
    }
    out
}

/// Listing of a mixed-integer program: the relaxation plus the binary set.
pub fn render_milp(mip: &MixedIntegerProgram) -> String {
    let mut out = render_lp(&mip.lp);
    out.push_str("binaries\n ");
    for &j in &mip.binary {
        out.push(' ');
        out.push_str(&mip.lp.col_name(j));
    }
    out.push('\n');
    out
}

/// Nonzero solution values, one `name value` pair per line.
pub fn render_solution(lp: &LinearProgram, sol: &LpSolution) -> String {
    let mut out = format!("status {:?}\nobjective {}\n", sol.status, num(sol.objective));
    for (j, &v) in sol.x.iter().enumerate() {
        if v.abs() > 1e-9 {
            out.push_str(&format!("  {} {}\n", lp.col_name(j), num(v)));
        }
    }
    out
}

fn signed(v: f64, follow: bool) -> String {
    if follow {
        if v < 0.0 {
            format!("- {}", num(-v))
        } else {
            format!("+ {}", num(v))
        }
    } else if v < 0.0 {
        format!("-{}", num(-v))
    } else {
        num(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{LpBuilder, Sense};

    #[test]
    fn renders_rows_bounds_and_signs() {
        let mut b = LpBuilder::new();
        let x = b.add_col("x", 0.0, f64::INFINITY, 1.0);
        let y = b.add_col("y", f64::NEG_INFINITY, 2.0, -0.5);
        let r = b.add_row("cap", Sense::Le, 4.0);
        b.set(r, x, 2.0);
        b.set(r, y, -1.0);
        let text = render_lp(&b.build());
        assert!(text.contains("minimize"));
        assert!(text.contains("1 x"));
        assert!(text.contains("- 0.500000 y"));
        assert!(text.contains("cap: 2 x - 1 y <= 4"));
        assert!(text.contains("-inf <= y <= 2"));
    }
}
