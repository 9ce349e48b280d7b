//! Chebyshev centre of the feasible region of a linear program.
//!
//! The centre of the largest inscribed ball is itself the solution of a
//! linear program: maximise `rho` subject to `g.z + rho*|g| <= h` over the
//! inequality rows. Equality rows would pin the radius at zero, so they are
//! eliminated first: the feasible set is expressed as `x = x0 + N z` with an
//! orthonormal null-space basis `N`, and the ball is inscribed inside the
//! affine slice. Orthonormality keeps Euclidean distances intact, so the
//! reported radius is measured in the original coordinates.
//!
//! The objective of the input program is ignored; only its geometry matters.

use crate::matrix::{dot, norm2, Matrix};
use crate::problem::{LinearProgram, LpBuilder, LpError, Sense, SolveStatus, ToleranceConfig};
use crate::simplex::solve_lp;

/// Largest ball inscribed in the feasible region.
#[derive(Clone, Debug)]
pub struct ChebyshevBall {
    pub center: Vec<f64>,
    /// Radius measured in the affine hull of the feasible set. Zero when the
    /// inequalities leave no interior (for example a single point).
    pub radius: f64,
}

pub fn chebyshev_center(lp: &LinearProgram, tol: &ToleranceConfig) -> Result<ChebyshevBall, LpError> {
    lp.validate()?;
    let n = lp.num_cols();

    // Gather the geometry: equality rows on one side, everything else as
    // `g.x <= h`, including finite variable bounds.
    let mut eq_rows: Vec<Vec<f64>> = Vec::new();
    let mut eq_rhs: Vec<f64> = Vec::new();
    let mut ineq: Vec<(Vec<f64>, f64)> = Vec::new();
    for i in 0..lp.num_rows() {
        let row = lp.a.row(i);
        match lp.senses[i] {
            Sense::Eq => {
                eq_rows.push(row.to_vec());
                eq_rhs.push(lp.rhs[i]);
            }
            Sense::Le => ineq.push((row.to_vec(), lp.rhs[i])),
            Sense::Ge => ineq.push((row.iter().map(|v| -v).collect(), -lp.rhs[i])),
        }
    }
    for j in 0..n {
        if lp.lower[j].is_finite() {
            let mut g = vec![0.0; n];
            g[j] = -1.0;
            ineq.push((g, -lp.lower[j]));
        }
        if lp.upper[j].is_finite() {
            let mut g = vec![0.0; n];
            g[j] = 1.0;
            ineq.push((g, lp.upper[j]));
        }
    }

    let (x0, basis) = if eq_rows.is_empty() {
        (vec![0.0; n], None)
    } else {
        let (x0, basis) = null_space(&eq_rows, &eq_rhs, n)?;
        (x0, Some(basis))
    };
    let dim = basis.as_ref().map_or(n, |b| b.len());
    if dim == 0 {
        // The equalities pin every coordinate; the region is the single
        // point x0 provided the inequalities admit it.
        for (g, h) in &ineq {
            if dot(g, &x0) > h + tol.feasibility * (1.0 + h.abs()) {
                return Err(LpError::Numerical(
                    "chebyshev centre of an empty feasible region".into(),
                ));
            }
        }
        return Ok(ChebyshevBall { center: x0, radius: 0.0 });
    }

    // Project the inequalities into the null-space coordinates and build the
    // ball program over (z, rho).
    let mut b = LpBuilder::new();
    let zs: Vec<usize> = (0..dim)
        .map(|k| b.add_col(format!("z{k}"), f64::NEG_INFINITY, f64::INFINITY, 0.0))
        .collect();
    let rho = b.add_col("rho", 0.0, f64::INFINITY, -1.0);
    let mut kept = 0usize;
    for (g, h) in &ineq {
        let (gz, hz) = project(g, *h, &x0, basis.as_deref());
        let nrm = norm2(&gz);
        if nrm <= 1e-12 {
            // Constant along the affine slice: either vacuous or a proof
            // that the slice misses the half-space entirely.
            if hz < -tol.feasibility * (1.0 + h.abs()) {
                return Err(LpError::Numerical(
                    "chebyshev centre of an empty feasible region".into(),
                ));
            }
            continue;
        }
        let r = b.add_row(format!("c{kept}"), Sense::Le, hz);
        kept += 1;
        for (k, &z) in zs.iter().enumerate() {
            b.set(r, z, gz[k]);
        }
        b.set(r, rho, nrm);
    }

    let ball = b.build();
    let sol = solve_lp(&ball, tol)?;
    match sol.status {
        SolveStatus::Optimal => {}
        SolveStatus::Infeasible => {
            return Err(LpError::Numerical(
                "chebyshev centre of an empty feasible region".into(),
            ));
        }
        SolveStatus::Unbounded => {
            return Err(LpError::Numerical(
                "chebyshev radius is unbounded; the region has no finite width".into(),
            ));
        }
    }

    let z = &sol.x[..dim];
    let center = match &basis {
        None => z.to_vec(),
        Some(basis) => {
            let mut x = x0.clone();
            for (k, v) in basis.iter().enumerate() {
                for j in 0..n {
                    x[j] += v[j] * z[k];
                }
            }
            x
        }
    };
    Ok(ChebyshevBall { center, radius: sol.x[dim].max(0.0) })
}

/// Rewrite `g.x <= h` in terms of `x = x0 + N z`: returns (N^T g, h - g.x0).
fn project(g: &[f64], h: f64, x0: &[f64], basis: Option<&[Vec<f64>]>) -> (Vec<f64>, f64) {
    match basis {
        None => (g.to_vec(), h),
        Some(basis) => {
            let hz = h - dot(g, x0);
            let gz = basis.iter().map(|v| dot(g, v)).collect();
            (gz, hz)
        }
    }
}

/// Particular solution and orthonormal null-space basis of `E x = e`.
///
/// Reduced row echelon form with partial pivoting picks the pivot columns;
/// the raw basis vectors (one per free column) are then orthonormalised with
/// modified Gram-Schmidt. Inconsistent systems are reported as an error.
fn null_space(rows: &[Vec<f64>], rhs: &[f64], n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>), LpError> {
    let m = rows.len();
    let mut a = Matrix::zeros(m, n + 1);
    let mut scale: f64 = 1.0;
    for (i, row) in rows.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            a.set(i, j, v);
            scale = scale.max(v.abs());
        }
        a.set(i, n, rhs[i]);
    }

    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..n {
        if r == m {
            break;
        }
        let mut best = r;
        for i in r + 1..m {
            if a.get(i, c).abs() > a.get(best, c).abs() + 1e-15 {
                best = i;
            }
        }
        if a.get(best, c).abs() <= 1e-10 * scale {
            continue;
        }
        if best != r {
            for j in 0..=n {
                let t = a.get(r, j);
                a.set(r, j, a.get(best, j));
                a.set(best, j, t);
            }
        }
        let p = a.get(r, c);
        for j in 0..=n {
            a.set(r, j, a.get(r, j) / p);
        }
        for i in 0..m {
            if i == r {
                continue;
            }
            let f = a.get(i, c);
            if f != 0.0 {
                for j in 0..=n {
                    a.set(i, j, a.get(i, j) - f * a.get(r, j));
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }

    let rhs_scale = 1.0 + rhs.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    for i in r..m {
        if a.get(i, n).abs() > 1e-8 * rhs_scale {
            return Err(LpError::Numerical("inconsistent equality rows".into()));
        }
    }

    let mut x0 = vec![0.0; n];
    for (k, &c) in pivot_cols.iter().enumerate() {
        x0[c] = a.get(k, n);
    }

    let free: Vec<usize> = (0..n).filter(|j| !pivot_cols.contains(j)).collect();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![0.0; n];
        v[f] = 1.0;
        for (k, &c) in pivot_cols.iter().enumerate() {
            v[c] = -a.get(k, f);
        }
        // Modified Gram-Schmidt against the vectors already accepted.
        for u in &basis {
            let p = dot(&v, u);
            for j in 0..n {
                v[j] -= p * u[j];
            }
        }
        let nrm = norm2(&v);
        if nrm <= 1e-12 {
            return Err(LpError::Numerical("degenerate null-space basis".into()));
        }
        for vj in &mut v {
            *vj /= nrm;
        }
        basis.push(v);
    }
    Ok((x0, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::LpBuilder;
    use approx::assert_relative_eq;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn unit_square() {
        let mut b = LpBuilder::new();
        b.add_col("x", 0.0, 1.0, 0.0);
        b.add_col("y", 0.0, 1.0, 0.0);
        let ball = chebyshev_center(&b.build(), &tol()).unwrap();
        assert_relative_eq!(ball.radius, 0.5, max_relative = 1e-7);
        assert_relative_eq!(ball.center[0], 0.5, max_relative = 1e-7);
        assert_relative_eq!(ball.center[1], 0.5, max_relative = 1e-7);
    }

    #[test]
    fn right_triangle_incentre() {
        // x >= 0, y >= 0, x + y <= 1: incircle radius (2 - sqrt 2) / 2.
        let mut b = LpBuilder::new();
        let x = b.add_col("x", 0.0, f64::INFINITY, 0.0);
        let y = b.add_col("y", 0.0, f64::INFINITY, 0.0);
        let r = b.add_row("hyp", Sense::Le, 1.0);
        b.set(r, x, 1.0);
        b.set(r, y, 1.0);
        let ball = chebyshev_center(&b.build(), &tol()).unwrap();
        let expect = (2.0 - 2f64.sqrt()) / 2.0;
        assert_relative_eq!(ball.radius, expect, max_relative = 1e-7);
        assert_relative_eq!(ball.center[0], expect, max_relative = 1e-7);
        assert_relative_eq!(ball.center[1], expect, max_relative = 1e-7);
    }

    #[test]
    fn equality_slice_keeps_euclidean_radius() {
        // The segment x + y = 1 with 0 <= x, y <= 1 has half-length
        // sqrt(2)/2; the centre is its midpoint.
        let mut b = LpBuilder::new();
        let x = b.add_col("x", 0.0, 1.0, 0.0);
        let y = b.add_col("y", 0.0, 1.0, 0.0);
        let r = b.add_row("line", Sense::Eq, 1.0);
        b.set(r, x, 1.0);
        b.set(r, y, 1.0);
        let ball = chebyshev_center(&b.build(), &tol()).unwrap();
        assert_relative_eq!(ball.radius, 2f64.sqrt() / 2.0, max_relative = 1e-7);
        assert_relative_eq!(ball.center[0], 0.5, max_relative = 1e-7);
        assert_relative_eq!(ball.center[1], 0.5, max_relative = 1e-7);
    }

    #[test]
    fn single_point_has_zero_radius() {
        let mut b = LpBuilder::new();
        let x = b.add_col("x", f64::NEG_INFINITY, f64::INFINITY, 0.0);
        let r1 = b.add_row("lo", Sense::Ge, 3.0);
        b.set(r1, x, 1.0);
        let r2 = b.add_row("hi", Sense::Le, 3.0);
        b.set(r2, x, 1.0);
        let ball = chebyshev_center(&b.build(), &tol()).unwrap();
        assert_relative_eq!(ball.center[0], 3.0, max_relative = 1e-7);
        assert!(ball.radius.abs() <= 1e-7);
    }

    #[test]
    fn bounded_width_with_unbounded_direction() {
        // A slab: |x| <= 1 with y free. The radius is finite even though
        // the region itself is unbounded.
        let mut b = LpBuilder::new();
        b.add_col("x", -1.0, 1.0, 0.0);
        b.add_col("y", f64::NEG_INFINITY, f64::INFINITY, 0.0);
        let ball = chebyshev_center(&b.build(), &tol()).unwrap();
        assert_relative_eq!(ball.radius, 1.0, max_relative = 1e-7);
        assert_relative_eq!(ball.center[0], 0.0, epsilon = 1e-7);
    }

    #[test]
    fn empty_region_is_an_error() {
        let mut b = LpBuilder::new();
        let x = b.add_col("x", f64::NEG_INFINITY, f64::INFINITY, 0.0);
        let r1 = b.add_row("le", Sense::Le, 0.0);
        b.set(r1, x, 1.0);
        let r2 = b.add_row("ge", Sense::Ge, 1.0);
        b.set(r2, x, 1.0);
        assert!(chebyshev_center(&b.build(), &tol()).is_err());
    }

    #[test]
    fn unbounded_width_is_an_error() {
        let mut b = LpBuilder::new();
        b.add_col("x", 0.0, f64::INFINITY, 0.0);
        assert!(chebyshev_center(&b.build(), &tol()).is_err());
    }

    #[test]
    fn inconsistent_equalities_are_an_error() {
        let mut b = LpBuilder::new();
        let x = b.add_col("x", 0.0, 1.0, 0.0);
        let r1 = b.add_row("one", Sense::Eq, 1.0);
        b.set(r1, x, 1.0);
        let r2 = b.add_row("two", Sense::Eq, 2.0);
        b.set(r2, x, 1.0);
        assert!(chebyshev_center(&b.build(), &tol()).is_err());
    }
}
