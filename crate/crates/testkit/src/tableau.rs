//! Textbook full-tableau simplex, used as a reference implementation.
//!
//! This solver shares nothing with the production kernel: it reduces the
//! program to standard form (equality rows over nonnegative variables) by
//! shifting, reflecting or splitting columns, runs two phases over an
//! explicit dense tableau, and applies Bland's rule throughout. It is far
//! too slow for real work and exactly right for checking answers.

use lpcore::{LinearProgram, Sense};

/// Outcome of a reference solve: just enough to compare against.
#[derive(Clone, Debug)]
pub enum Reference {
    Optimal { objective: f64, x: Vec<f64> },
    Infeasible,
    Unbounded,
}

impl Reference {
    pub fn objective(&self) -> Option<f64> {
        match self {
            Reference::Optimal { objective, .. } => Some(*objective),
            _ => None,
        }
    }
}

/// How each original column was rewritten into nonnegative variables.
enum ColMap {
    /// `x = lo + t` with `t >= 0`.
    Shift { col: usize, lo: f64 },
    /// `x = up - t` with `t >= 0` (no finite lower bound).
    Reflect { col: usize, up: f64 },
    /// `x = t_pos - t_neg`, both nonnegative (free column).
    Split { pos: usize, neg: usize },
}

pub fn tableau_solve(lp: &LinearProgram) -> Reference {
    let n = lp.num_cols();

    // Rewrite every column as one or two nonnegative variables.
    let mut maps: Vec<ColMap> = Vec::with_capacity(n);
    let mut ncols = 0usize;
    for j in 0..n {
        let lo = lp.lower[j];
        let up = lp.upper[j];
        if lo.is_finite() {
            maps.push(ColMap::Shift { col: ncols, lo });
            ncols += 1;
        } else if up.is_finite() {
            maps.push(ColMap::Reflect { col: ncols, up });
            ncols += 1;
        } else {
            maps.push(ColMap::Split { pos: ncols, neg: ncols + 1 });
            ncols += 2;
        }
    }

    // Transformed rows: the original ones plus one `t <= span` row per
    // column that kept a finite width after shifting.
    let mut rows: Vec<(Vec<f64>, Sense, f64)> = Vec::new();
    for i in 0..lp.num_rows() {
        let mut coef = vec![0.0; ncols];
        let mut rhs = lp.rhs[i];
        for (j, map) in maps.iter().enumerate() {
            let a = lp.a.get(i, j);
            if a == 0.0 {
                continue;
            }
            match *map {
                ColMap::Shift { col, lo } => {
                    coef[col] += a;
                    rhs -= a * lo;
                }
                ColMap::Reflect { col, up } => {
                    coef[col] -= a;
                    rhs -= a * up;
                }
                ColMap::Split { pos, neg } => {
                    coef[pos] += a;
                    coef[neg] -= a;
                }
            }
        }
        rows.push((coef, lp.senses[i], rhs));
    }
    for (j, map) in maps.iter().enumerate() {
        if let ColMap::Shift { col, lo } = *map {
            let up = lp.upper[j];
            if up.is_finite() {
                let mut coef = vec![0.0; ncols];
                coef[col] = 1.0;
                rows.push((coef, Sense::Le, up - lo));
            }
        }
    }

    // Standard form: slack per inequality, nonnegative right-hand sides,
    // one artificial per row as the starting basis.
    let m = rows.len();
    let mut nslack = 0usize;
    for (_, sense, _) in &rows {
        if !matches!(sense, Sense::Eq) {
            nslack += 1;
        }
    }
    let width = ncols + nslack + m + 1; // structurals, slacks, artificials, rhs
    let rhs_col = width - 1;
    let mut t = vec![vec![0.0; width]; m];
    let mut basis = vec![0usize; m];
    let mut slack_at = ncols;
    for (i, (coef, sense, rhs)) in rows.iter().enumerate() {
        t[i][..ncols].copy_from_slice(coef);
        match sense {
            Sense::Le => {
                t[i][slack_at] = 1.0;
                slack_at += 1;
            }
            Sense::Ge => {
                t[i][slack_at] = -1.0;
                slack_at += 1;
            }
            Sense::Eq => {}
        }
        t[i][rhs_col] = *rhs;
        if t[i][rhs_col] < 0.0 {
            for v in t[i].iter_mut() {
                *v = -*v;
            }
        }
        t[i][ncols + nslack + i] = 1.0;
        basis[i] = ncols + nslack + i;
    }

    let real = ncols + nslack;
    let bscale = 1.0 + rows.iter().fold(0.0f64, |acc, r| acc.max(r.2.abs()));

    // Phase 1: drive the artificials to zero.
    let mut phase1 = vec![0.0; width - 1];
    for c in phase1.iter_mut().skip(real) {
        *c = 1.0;
    }
    match iterate(&mut t, &mut basis, &phase1, width - 1) {
        Step::Unbounded => unreachable!("phase one of the reference solver is bounded below"),
        Step::Optimal => {}
    }
    let infeas: f64 = basis
        .iter()
        .zip(&t)
        .filter(|(b, _)| **b >= real)
        .map(|(_, row)| row[rhs_col])
        .sum();
    if infeas > 1e-7 * bscale {
        return Reference::Infeasible;
    }

    // Pivot leftover artificials out of the basis; a row that offers no
    // pivot is redundant and can be dropped.
    let mut r = 0;
    while r < t.len() {
        if basis[r] >= real {
            let q = (0..real).find(|&j| t[r][j].abs() > 1e-7);
            match q {
                Some(q) => pivot(&mut t, &mut basis, r, q),
                None => {
                    t.remove(r);
                    basis.remove(r);
                    continue;
                }
            }
        }
        r += 1;
    }

    // Phase 2 over the real columns only.
    let mut costs = vec![0.0; width - 1];
    for (j, map) in maps.iter().enumerate() {
        let c = lp.objective[j];
        match *map {
            ColMap::Shift { col, .. } => costs[col] += c,
            ColMap::Reflect { col, .. } => costs[col] -= c,
            ColMap::Split { pos, neg } => {
                costs[pos] += c;
                costs[neg] -= c;
            }
        }
    }
    match iterate(&mut t, &mut basis, &costs, real) {
        Step::Unbounded => return Reference::Unbounded,
        Step::Optimal => {}
    }

    // Read the transformed solution and map it back.
    let mut tx = vec![0.0; width - 1];
    for (i, &b) in basis.iter().enumerate() {
        tx[b] = t[i][rhs_col];
    }
    let mut x = vec![0.0; n];
    for (j, map) in maps.iter().enumerate() {
        x[j] = match *map {
            ColMap::Shift { col, lo } => lo + tx[col],
            ColMap::Reflect { col, up } => up - tx[col],
            ColMap::Split { pos, neg } => tx[pos] - tx[neg],
        };
    }
    let objective = lp.objective.iter().zip(&x).map(|(c, v)| c * v).sum();
    Reference::Optimal { objective, x }
}

enum Step {
    Optimal,
    Unbounded,
}

/// Bland's rule simplex over the tableau, entering columns limited to
/// `0..enterable`. Reduced costs are recomputed from scratch every pass;
/// clarity beats speed in a reference implementation.
fn iterate(t: &mut Vec<Vec<f64>>, basis: &mut Vec<usize>, costs: &[f64], enterable: usize) -> Step {
    let rhs_col = t.first().map_or(0, |r| r.len() - 1);
    for _round in 0..200_000 {
        let mut entering = None;
        for j in 0..enterable {
            if basis.contains(&j) {
                continue;
            }
            let mut d = costs[j];
            for (i, row) in t.iter().enumerate() {
                d -= costs[basis[i]] * row[j];
            }
            if d < -1e-9 {
                entering = Some(j);
                break;
            }
        }
        let q = match entering {
            None => return Step::Optimal,
            Some(q) => q,
        };

        let mut leave: Option<(usize, f64)> = None;
        for (i, row) in t.iter().enumerate() {
            if row[q] > 1e-9 {
                let ratio = row[rhs_col] / row[q];
                match leave {
                    None => leave = Some((i, ratio)),
                    Some((li, lr)) => {
                        if ratio < lr - 1e-9
                            || ((ratio - lr).abs() <= 1e-9 && basis[i] < basis[li])
                        {
                            leave = Some((i, ratio));
                        }
                    }
                }
            }
        }
        match leave {
            None => return Step::Unbounded,
            Some((r, _)) => pivot(t, basis, r, q),
        }
    }
    panic!("reference simplex exceeded its iteration budget");
}

fn pivot(t: &mut [Vec<f64>], basis: &mut [usize], r: usize, q: usize) {
    let p = t[r][q];
    for v in t[r].iter_mut() {
        *v /= p;
    }
    for i in 0..t.len() {
        if i == r {
            continue;
        }
        let f = t[i][q];
        if f != 0.0 {
            for j in 0..t[i].len() {
                t[i][j] -= f * t[r][j];
            }
        }
    }
    basis[r] = q;
}
