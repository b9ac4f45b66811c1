//! Lloyd k-means with k-means++ seeding, plus mean silhouette scoring for
//! selecting the number of clusters.
//!
//! Everything is deterministic for a fixed RNG: restarts draw from the caller
//! RNG in a fixed order, and ties in assignment or scoring resolve to the
//! lowest index.

use rand::Rng;

use super::vec::sq_dist;
use crate::num::Real;

/// Restart and iteration budget for one k-means run.
#[derive(Debug, Clone, Copy)]
pub struct KMeansConfig {
    /// Independent seedings; the run with the lowest inertia wins.
    pub n_restarts: usize,
    /// Lloyd iteration cap per restart.
    pub max_iter: usize,
}

impl Default for KMeansConfig {
    fn default() -> Self {
        Self {
            n_restarts: 4,
            max_iter: 100,
        }
    }
}

/// Outcome of one k-means clustering.
#[derive(Debug, Clone)]
pub struct KMeansResult<R> {
    pub assignments: Vec<usize>,
    pub centroids: Vec<Vec<R>>,
    pub inertia: R,
}

/// Cluster `points` into `k` groups. Panics if `k == 0` or `k > points.len()`.
pub fn kmeans<R: Real>(
    points: &[Vec<R>],
    k: usize,
    config: KMeansConfig,
    rng: &mut impl Rng,
) -> KMeansResult<R> {
    assert!(k >= 1 && k <= points.len(), "k must be in [1, n_points]");
    let mut best: Option<KMeansResult<R>> = None;
    for _ in 0..config.n_restarts.max(1) {
        let run = kmeans_once(points, k, config.max_iter, rng);
        let better = match &best {
            None => true,
            Some(b) => run.inertia < b.inertia,
        };
        if better {
            best = Some(run);
        }
    }
    best.expect("at least one restart ran")
}

fn kmeans_once<R: Real>(
    points: &[Vec<R>],
    k: usize,
    max_iter: usize,
    rng: &mut impl Rng,
) -> KMeansResult<R> {
    let dim = points[0].len();
    let mut centroids = plus_plus_init(points, k, rng);
    let mut assignments = vec![0usize; points.len()];

    for _ in 0..max_iter {
        let mut changed = false;
        for (i, p) in points.iter().enumerate() {
            let a = nearest_centroid(p, &centroids);
            if a != assignments[i] {
                assignments[i] = a;
                changed = true;
            }
        }
        // Recompute centroids; an emptied cluster keeps its previous center.
        let mut sums = vec![vec![R::zero(); dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &a) in points.iter().zip(&assignments) {
            counts[a] += 1;
            for (s, &x) in sums[a].iter_mut().zip(p) {
                *s += x;
            }
        }
        for (c, (sum, &count)) in centroids.iter_mut().zip(sums.iter().zip(&counts)) {
            if count > 0 {
                let denom = R::from_usize_lossy(count);
                for (ci, &s) in c.iter_mut().zip(sum) {
                    *ci = s / denom;
                }
            }
        }
        if !changed {
            break;
        }
    }

    let inertia = points
        .iter()
        .zip(&assignments)
        .map(|(p, &a)| sq_dist(p, &centroids[a]))
        .sum();
    KMeansResult {
        assignments,
        centroids,
        inertia,
    }
}

/// k-means++ seeding: first center uniform, the rest proportional to the
/// squared distance to the nearest chosen center.
fn plus_plus_init<R: Real>(points: &[Vec<R>], k: usize, rng: &mut impl Rng) -> Vec<Vec<R>> {
    let mut centers: Vec<Vec<R>> = Vec::with_capacity(k);
    centers.push(points[rng.gen_range(0..points.len())].clone());
    let mut d2: Vec<R> = points.iter().map(|p| sq_dist(p, &centers[0])).collect();

    while centers.len() < k {
        let total: R = d2.iter().copied().sum();
        let next = if total <= R::zero() {
            // All remaining points coincide with a center; pick uniformly.
            rng.gen_range(0..points.len())
        } else {
            let target = R::from_f64_lossy(rng.gen::<f64>()) * total;
            let mut acc = R::zero();
            let mut chosen = points.len() - 1;
            for (i, &w) in d2.iter().enumerate() {
                acc += w;
                if acc >= target {
                    chosen = i;
                    break;
                }
            }
            chosen
        };
        centers.push(points[next].clone());
        let latest = centers.last().expect("just pushed");
        for (slot, p) in d2.iter_mut().zip(points) {
            let d = sq_dist(p, latest);
            if d < *slot {
                *slot = d;
            }
        }
    }
    centers
}

fn nearest_centroid<R: Real>(p: &[R], centroids: &[Vec<R>]) -> usize {
    let mut best = 0usize;
    let mut best_d = sq_dist(p, &centroids[0]);
    for (i, c) in centroids.iter().enumerate().skip(1) {
        let d = sq_dist(p, c);
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    best
}

/// Mean silhouette coefficient over all points, Euclidean distance.
///
/// Points in singleton clusters contribute 0, matching the usual convention.
pub fn mean_silhouette<R: Real>(points: &[Vec<R>], assignments: &[usize], k: usize) -> R {
    assert_eq!(points.len(), assignments.len());
    let n = points.len();
    let mut cluster_sizes = vec![0usize; k];
    for &a in assignments {
        cluster_sizes[a] += 1;
    }

    let mut total = R::zero();
    for i in 0..n {
        let own = assignments[i];
        if cluster_sizes[own] <= 1 {
            continue; // silhouette of a singleton is 0
        }
        // Mean distance to every cluster.
        let mut dist_sums = vec![R::zero(); k];
        for j in 0..n {
            if i == j {
                continue;
            }
            dist_sums[assignments[j]] += sq_dist(&points[i], &points[j]).sqrt();
        }
        let a = dist_sums[own] / R::from_usize_lossy(cluster_sizes[own] - 1);
        let mut b = R::infinity();
        for (c, &size) in cluster_sizes.iter().enumerate() {
            if c == own || size == 0 {
                continue;
            }
            let m = dist_sums[c] / R::from_usize_lossy(size);
            if m < b {
                b = m;
            }
        }
        if b.is_finite() {
            let denom = a.max(b);
            if denom > R::zero() {
                total += (b - a) / denom;
            }
        }
    }
    total / R::from_usize_lossy(n)
}

/// Find the `k` in `[k_min, k_max]` that maximizes the mean silhouette.
/// Ties resolve to the smaller `k`. Returns `(best_k, best_silhouette)`.
pub fn best_k_by_silhouette<R: Real>(
    points: &[Vec<R>],
    k_min: usize,
    k_max: usize,
    config: KMeansConfig,
    rng: &mut impl Rng,
) -> (usize, R) {
    assert!(k_min >= 2 && k_max >= k_min, "need 2 <= k_min <= k_max");
    let mut best_k = k_min;
    let mut best_s = R::neg_infinity();
    for k in k_min..=k_max {
        let result = kmeans(points, k, config, rng);
        let s = mean_silhouette(points, &result.assignments, k);
        if s > best_s {
            best_s = s;
            best_k = k;
        }
    }
    (best_k, best_s)
}
