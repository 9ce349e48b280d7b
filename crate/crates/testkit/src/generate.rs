//! Random instance generators for the solver test suites.
//!
//! Feasible instances are built around a planted interior point so the
//! expected status is known by construction; a slice of each batch skips
//! the planting to exercise infeasible and unbounded paths too.

use lpcore::{LinearProgram, LpBuilder, MixedIntegerProgram, Sense};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Shape of a random program.
#[derive(Clone, Copy, Debug)]
pub struct LpShape {
    pub cols: usize,
    pub rows: usize,
    /// Chance that a column is free or half-open instead of boxed.
    pub open_share: f64,
    /// Plant an interior point so the instance is feasible by construction.
    pub plant_feasible: bool,
}

impl Default for LpShape {
    fn default() -> Self {
        Self { cols: 8, rows: 6, open_share: 0.15, plant_feasible: true }
    }
}

/// A dense random program with mixed senses and bound patterns.
pub fn random_lp(rng: &mut ChaCha8Rng, shape: LpShape) -> LinearProgram {
    let mut b = LpBuilder::new();
    let mut point = Vec::with_capacity(shape.cols);
    for j in 0..shape.cols {
        let style: f64 = rng.random();
        let (lo, up) = if style < shape.open_share / 2.0 {
            (f64::NEG_INFINITY, f64::INFINITY)
        } else if style < shape.open_share {
            (0.0, f64::INFINITY)
        } else if style < shape.open_share + 0.15 {
            let lo = rng.random_range(-4.0..0.0);
            (lo, lo + rng.random_range(0.5..6.0))
        } else {
            (0.0, rng.random_range(0.5..8.0))
        };
        let cost = rng.random_range(-5.0..5.0);
        b.add_col(format!("x{j}"), lo, up, cost);
        let plant_lo = if lo.is_finite() { lo } else { -3.0 };
        let plant_up = if up.is_finite() { up } else { plant_lo + 6.0 };
        point.push(rng.random_range(plant_lo..plant_up));
    }

    for i in 0..shape.rows {
        let coef: Vec<f64> = (0..shape.cols).map(|_| rng.random_range(-3.0..3.0)).collect();
        let at_point: f64 = coef.iter().zip(&point).map(|(a, x)| a * x).sum();
        let sense = match rng.random_range(0..6) {
            0 => Sense::Eq,
            1 | 2 => Sense::Ge,
            _ => Sense::Le,
        };
        let rhs = if shape.plant_feasible {
            let margin = rng.random_range(0.1..2.0);
            match sense {
                Sense::Eq => at_point,
                Sense::Le => at_point + margin,
                Sense::Ge => at_point - margin,
            }
        } else {
            rng.random_range(-5.0..5.0)
        };
        let r = b.add_row(format!("r{i}"), sense, rhs);
        for (j, &a) in coef.iter().enumerate() {
            b.set(r, j, a);
        }
    }
    b.build()
}

/// A bounded polytope with a planted interior point: box bounds on every
/// column plus `extra_rows` inequalities that leave the point a margin.
pub fn random_polytope(rng: &mut ChaCha8Rng, cols: usize, extra_rows: usize) -> LinearProgram {
    let mut b = LpBuilder::new();
    let mut point = Vec::with_capacity(cols);
    for j in 0..cols {
        let lo = rng.random_range(-3.0..0.0);
        let up = lo + rng.random_range(1.0..6.0);
        b.add_col(format!("x{j}"), lo, up, 0.0);
        let pad = 0.25 * (up - lo);
        point.push(rng.random_range(lo + pad..up - pad));
    }
    for i in 0..extra_rows {
        let coef: Vec<f64> = (0..cols).map(|_| rng.random_range(-2.0..2.0)).collect();
        let at_point: f64 = coef.iter().zip(&point).map(|(a, x)| a * x).sum();
        let margin = rng.random_range(0.3..2.0);
        let (sense, rhs) = if rng.random_bool(0.5) {
            (Sense::Le, at_point + margin)
        } else {
            (Sense::Ge, at_point - margin)
        };
        let r = b.add_row(format!("cut{i}"), sense, rhs);
        for (j, &a) in coef.iter().enumerate() {
            b.set(r, j, a);
        }
    }
    b.build()
}

/// A random program whose leading columns are binary.
///
/// The planted point gives the binaries genuine zero/one values, so at
/// least one integer assignment is feasible by construction; the relaxation
/// is still free to go fractional and exercise the branching.
pub fn random_milp(rng: &mut ChaCha8Rng, shape: LpShape, binaries: usize) -> MixedIntegerProgram {
    assert!(binaries <= shape.cols);
    let mut b = LpBuilder::new();
    let mut point = Vec::with_capacity(shape.cols);
    for j in 0..shape.cols {
        if j < binaries {
            b.add_col(format!("b{j}"), 0.0, 1.0, rng.random_range(-5.0..5.0));
            point.push(f64::from(rng.random_range(0..2)));
        } else {
            let up = rng.random_range(0.5..8.0);
            b.add_col(format!("x{j}"), 0.0, up, rng.random_range(-5.0..5.0));
            point.push(rng.random_range(0.0..up));
        }
    }
    for i in 0..shape.rows {
        let coef: Vec<f64> = (0..shape.cols).map(|_| rng.random_range(-3.0..3.0)).collect();
        let at_point: f64 = coef.iter().zip(&point).map(|(a, x)| a * x).sum();
        let (sense, rhs) = if rng.random_bool(0.7) {
            (Sense::Le, at_point + rng.random_range(0.1..2.0))
        } else {
            (Sense::Ge, at_point - rng.random_range(0.1..2.0))
        };
        let r = b.add_row(format!("r{i}"), sense, rhs);
        for (j, &a) in coef.iter().enumerate() {
            b.set(r, j, a);
        }
    }
    MixedIntegerProgram::new(b.build(), (0..binaries).collect())
}
