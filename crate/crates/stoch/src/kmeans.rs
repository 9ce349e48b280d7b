//! Weighted planar k-means for aggregating co-located units.

use crate::error::StochError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Debug)]
pub struct Clustering {
    /// Cluster index per input point.
    pub assignment: Vec<usize>,
    pub centroids: Vec<[f64; 2]>,
    /// Weighted sum of squared distances to the assigned centroids.
    pub distortion: f64,
}

fn dist2(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

/// Weighted Lloyd iteration with greedy farthest-point seeding; the
/// result is deterministic for a fixed seed.
pub fn kmeans_cluster(
    points: &[[f64; 2]],
    weights: &[f64],
    k: usize,
    seed: u64,
) -> Result<Clustering, StochError> {
    let n = points.len();
    if k == 0 {
        return Err(StochError::Params("cluster count must be positive".into()));
    }
    if k > n {
        return Err(StochError::Params(format!("{k} clusters over {n} points")));
    }
    if weights.len() != n {
        return Err(StochError::Params("one weight per point required".into()));
    }
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(StochError::Params("weights must be nonnegative".into()));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Seeding: a random first centre, then repeatedly the point farthest
    // (weighted) from the chosen set.
    let mut centroids: Vec<[f64; 2]> = vec![points[rng.random_range(0..n)]];
    while centroids.len() < k {
        let far = (0..n)
            .max_by(|&i, &j| {
                let di = weights[i] * nearest_dist2(points[i], &centroids);
                let dj = weights[j] * nearest_dist2(points[j], &centroids);
                di.partial_cmp(&dj).unwrap()
            })
            .unwrap();
        centroids.push(points[far]);
    }

    let mut assignment = vec![0usize; n];
    for _ in 0..100 {
        let mut changed = false;
        for (i, point) in points.iter().enumerate() {
            let mut best = 0;
            let mut best_d = f64::INFINITY;
            for (j, c) in centroids.iter().enumerate() {
                let d = dist2(*point, *c);
                if d < best_d {
                    best_d = d;
                    best = j;
                }
            }
            if assignment[i] != best {
                assignment[i] = best;
                changed = true;
            }
        }
        let mut sums = vec![[0.0f64; 3]; k];
        for (i, point) in points.iter().enumerate() {
            let j = assignment[i];
            sums[j][0] += weights[i] * point[0];
            sums[j][1] += weights[i] * point[1];
            sums[j][2] += weights[i];
        }
        for (j, sum) in sums.iter().enumerate() {
            if sum[2] > 0.0 {
                centroids[j] = [sum[0] / sum[2], sum[1] / sum[2]];
            } else {
                // Revive an empty cluster at the worst-served point.
                let far = (0..n)
                    .max_by(|&a, &b| {
                        let da = weights[a] * dist2(points[a], centroids[assignment[a]]);
                        let db = weights[b] * dist2(points[b], centroids[assignment[b]]);
                        da.partial_cmp(&db).unwrap()
                    })
                    .unwrap();
                centroids[j] = points[far];
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let distortion = (0..n).map(|i| weights[i] * dist2(points[i], centroids[assignment[i]])).sum();
    Ok(Clustering { assignment, centroids, distortion })
}

fn nearest_dist2(p: [f64; 2], centroids: &[[f64; 2]]) -> f64 {
    centroids.iter().map(|&c| dist2(p, c)).fold(f64::INFINITY, f64::min)
}

/// Sum the weights (capacities) of co-clustered units.
pub fn aggregate_weights(assignment: &[usize], weights: &[f64], k: usize) -> Vec<f64> {
    let mut totals = vec![0.0; k];
    for (&j, &w) in assignment.iter().zip(weights) {
        totals[j] += w;
    }
    totals
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn one_cluster_per_point_has_zero_distortion() {
        let points = [[0.0, 0.0], [1.0, 5.0], [-2.0, 3.0]];
        let got = kmeans_cluster(&points, &[1.0; 3], 3, 0).unwrap();
        assert_relative_eq!(got.distortion, 0.0);
        let mut seen = got.assignment.clone();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2]);
    }

    #[test]
    fn separated_clouds_recover_their_means() {
        let mut points = Vec::new();
        for i in 0..5 {
            points.push([0.1 * f64::from(i), 0.0]);
            points.push([10.0 + 0.1 * f64::from(i), 4.0]);
        }
        let weights = vec![1.0; points.len()];
        let got = kmeans_cluster(&points, &weights, 2, 3).unwrap();
        let mut cx: Vec<f64> = got.centroids.iter().map(|c| c[0]).collect();
        cx.sort_by(f64::total_cmp);
        assert_relative_eq!(cx[0], 0.2, epsilon = 1e-9);
        assert_relative_eq!(cx[1], 10.2, epsilon = 1e-9);
        let split = aggregate_weights(&got.assignment, &weights, 2);
        assert_relative_eq!(split[0], 5.0);
        assert_relative_eq!(split[1], 5.0);
    }

    #[test]
    fn beats_random_assignments() {
        use rand::{Rng, SeedableRng};
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let points: Vec<[f64; 2]> =
            (0..30).map(|_| [rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)]).collect();
        let weights: Vec<f64> = (0..30).map(|_| rng.random_range(0.5..2.0)).collect();
        let fitted = kmeans_cluster(&points, &weights, 3, 7).unwrap();

        for _ in 0..100 {
            let assignment: Vec<usize> = (0..30).map(|_| rng.random_range(0..3)).collect();
            // Best centroids for this assignment are the weighted means.
            let mut sums = vec![[0.0f64; 3]; 3];
            for (i, p) in points.iter().enumerate() {
                let j = assignment[i];
                sums[j][0] += weights[i] * p[0];
                sums[j][1] += weights[i] * p[1];
                sums[j][2] += weights[i];
            }
            let centroids: Vec<[f64; 2]> = sums
                .iter()
                .map(|s| if s[2] > 0.0 { [s[0] / s[2], s[1] / s[2]] } else { [0.0, 0.0] })
                .collect();
            let distortion: f64 = (0..30)
                .map(|i| weights[i] * dist2(points[i], centroids[assignment[i]]))
                .sum();
            assert!(fitted.distortion <= distortion + 1e-9);
        }
    }

    #[test]
    fn invalid_cluster_counts_are_rejected() {
        let points = [[0.0, 0.0], [1.0, 1.0]];
        assert!(kmeans_cluster(&points, &[1.0; 2], 0, 0).is_err());
        assert!(kmeans_cluster(&points, &[1.0; 2], 3, 0).is_err());
    }
}
