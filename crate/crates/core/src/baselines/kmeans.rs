use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BaselineError;
use crate::matrix::PointSet;
use crate::silhouette::Clustering;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KMeansConfig {
    pub k: usize,
    pub max_iter: usize,
    pub n_init: usize,
    pub seed: u64,
}

impl KMeansConfig {
    /// `max_iter = 300`, `n_init = 10`, `seed = 0`.
    pub const fn new(k: usize) -> Self {
        Self {
            k,
            max_iter: 300,
            n_init: 10,
            seed: 0,
        }
    }

    pub const fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub const fn with_n_init(mut self, n_init: usize) -> Self {
        self.n_init = n_init;
        self
    }

    pub const fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KMeansFit {
    pub clustering: Clustering,
    /// `k × m`, row-major.
    pub centroids: Vec<f64>,
    /// Within-cluster sum of squared distances to the final centroids.
    pub inertia: f64,
    pub iterations: usize,
    /// Inertia after each assignment step of the winning restart.
    pub inertia_trace: Vec<f64>,
}

#[inline]
fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Lloyd's algorithm with k-means++ seeding and `n_init` restarts; the run
/// with the lowest inertia wins.
pub fn kmeans(points: &PointSet, config: &KMeansConfig) -> Result<KMeansFit, BaselineError> {
    let n = points.n();
    if config.k < 2 {
        return Err(BaselineError::InvalidConfig("k-means needs k >= 2"));
    }
    if config.k > n {
        return Err(BaselineError::KTooLarge { k: config.k, n });
    }
    if config.max_iter == 0 || config.n_init == 0 {
        return Err(BaselineError::InvalidConfig("max_iter and n_init must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut best: Option<KMeansFit> = None;
    for _ in 0..config.n_init {
        let init = plus_plus_init(points, config.k, &mut rng);
        let fit = lloyd(points, init, config.k, config.max_iter)?;
        if best.as_ref().map_or(true, |b| fit.inertia < b.inertia) {
            best = Some(fit);
        }
    }
    Ok(best.expect("n_init >= 1"))
}

fn plus_plus_init(points: &PointSet, k: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let n = points.n();
    let m = points.dim();
    let mut chosen = Vec::with_capacity(k);
    chosen.push(rng.gen_range(0..n));
    let mut closest: Vec<f64> = (0..n)
        .map(|i| sq_dist(points.row(i), points.row(chosen[0])))
        .collect();
    while chosen.len() < k {
        let total: f64 = closest.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut pick = None;
            for (i, &w) in closest.iter().enumerate() {
                if w > 0.0 {
                    pick = Some(i);
                    if target < w {
                        break;
                    }
                    target -= w;
                }
            }
            pick.expect("some point has positive weight")
        } else {
            // every point coincides with a chosen centre
            let free: Vec<usize> = (0..n).filter(|i| !chosen.contains(i)).collect();
            free[rng.gen_range(0..free.len())]
        };
        chosen.push(next);
        for (i, c) in closest.iter_mut().enumerate() {
            *c = c.min(sq_dist(points.row(i), points.row(next)));
        }
    }
    let mut centroids = Vec::with_capacity(k * m);
    for &c in &chosen {
        centroids.extend_from_slice(points.row(c));
    }
    centroids
}

fn lloyd(
    points: &PointSet,
    mut centroids: Vec<f64>,
    k: usize,
    max_iter: usize,
) -> Result<KMeansFit, BaselineError> {
    let n = points.n();
    let m = points.dim();
    let mut labels = vec![usize::MAX; n];
    let mut cost = vec![0.0; n];
    let mut trace = Vec::new();
    let mut iterations = 0;
    loop {
        iterations += 1;
        let mut changed = false;
        for i in 0..n {
            let x = points.row(i);
            let (mut arg, mut dmin) = (0, f64::INFINITY);
            for c in 0..k {
                let d = sq_dist(x, &centroids[c * m..(c + 1) * m]);
                if d < dmin {
                    arg = c;
                    dmin = d;
                }
            }
            changed |= labels[i] != arg;
            labels[i] = arg;
            cost[i] = dmin;
        }
        repair_empty(points, &mut labels, &mut cost, &mut centroids, k);
        trace.push(cost.iter().sum());
        if !changed || iterations >= max_iter {
            break;
        }
        update_means(points, &labels, &mut centroids, k);
    }
    let inertia = (0..n)
        .map(|i| sq_dist(points.row(i), &centroids[labels[i] * m..(labels[i] + 1) * m]))
        .sum();
    Ok(KMeansFit {
        clustering: Clustering::new(labels, k)?,
        centroids,
        inertia,
        iterations,
        inertia_trace: trace,
    })
}

/// Moves the point farthest from its centre (taken from a cluster with more
/// than one member) into each empty cluster.
fn repair_empty(
    points: &PointSet,
    labels: &mut [usize],
    cost: &mut [f64],
    centroids: &mut [f64],
    k: usize,
) {
    let m = points.dim();
    let mut sizes = vec![0usize; k];
    for &l in labels.iter() {
        sizes[l] += 1;
    }
    for c in 0..k {
        if sizes[c] > 0 {
            continue;
        }
        let far = (0..labels.len())
            .filter(|&i| sizes[labels[i]] > 1)
            .fold(None, |acc: Option<usize>, i| match acc {
                Some(j) if cost[j] >= cost[i] => Some(j),
                _ => Some(i),
            })
            .expect("k <= n leaves a cluster with two members");
        sizes[labels[far]] -= 1;
        sizes[c] = 1;
        labels[far] = c;
        cost[far] = 0.0;
        centroids[c * m..(c + 1) * m].copy_from_slice(points.row(far));
    }
}

fn update_means(points: &PointSet, labels: &[usize], centroids: &mut [f64], k: usize) {
    let m = points.dim();
    let mut counts = vec![0usize; k];
    centroids.fill(0.0);
    for (i, &l) in labels.iter().enumerate() {
        counts[l] += 1;
        for (c, x) in centroids[l * m..(l + 1) * m].iter_mut().zip(points.row(i)) {
            *c += x;
        }
    }
    for (l, &cnt) in counts.iter().enumerate() {
        for c in &mut centroids[l * m..(l + 1) * m] {
            *c /= cnt as f64;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> PointSet {
        PointSet::from_rows(&[[1.0, 2.0], [2.0, 1.0], [1.5, 2.5], [6.0, 2.0], [6.0, 3.0]]).unwrap()
    }

    #[test]
    fn toy_two_clusters_for_any_seed() {
        let expected = Clustering::new(vec![0, 0, 0, 1, 1], 2).unwrap();
        for seed in 0..20 {
            let fit = kmeans(&toy(), &KMeansConfig::new(2).with_seed(seed)).unwrap();
            assert!(fit.clustering.same_partition(&expected), "seed {seed}");
        }
    }

    #[test]
    fn k_equals_n() {
        let fit = kmeans(&toy(), &KMeansConfig::new(5)).unwrap();
        assert_eq!(fit.clustering.k(), 5);
        assert!(fit.clustering.sizes().iter().all(|&s| s == 1));
        assert_eq!(fit.inertia, 0.0);
    }

    #[test]
    fn errors() {
        assert_eq!(
            kmeans(&toy(), &KMeansConfig::new(6)),
            Err(BaselineError::KTooLarge { k: 6, n: 5 })
        );
        assert!(kmeans(&toy(), &KMeansConfig::new(1)).is_err());
        assert!(kmeans(&toy(), &KMeansConfig::new(2).with_n_init(0)).is_err());
    }

    #[test]
    fn duplicate_points_still_give_k_clusters() {
        let p = PointSet::from_rows(&[[0.0], [0.0], [0.0], [0.0], [1.0]]).unwrap();
        let fit = kmeans(&p, &KMeansConfig::new(3)).unwrap();
        assert_eq!(fit.clustering.k(), 3);
    }

    #[test]
    fn deterministic_given_seed() {
        let a = kmeans(&toy(), &KMeansConfig::new(3).with_seed(9)).unwrap();
        let b = kmeans(&toy(), &KMeansConfig::new(3).with_seed(9)).unwrap();
        assert_eq!(a, b);
    }
}
