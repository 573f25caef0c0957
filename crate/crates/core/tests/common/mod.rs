//! Test fixtures and independent reference implementations.
//!
//! Everything here recomputes quantities straight from their definitions
//! with plain loops and naive sums; none of it calls into the prefix-sum,
//! running-scan or compensated-summation code paths it is used to check.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use silhouette_ub::{build_matrix, validate_matrix, Clustering, DissimilarityMatrix, Metric, PointSet};

pub const TOY_POINTS: [[f64; 2]; 5] = [[1.0, 2.0], [2.0, 1.0], [1.5, 2.5], [6.0, 2.0], [6.0, 3.0]];

pub fn toy_points() -> PointSet {
    PointSet::from_rows(&TOY_POINTS).unwrap()
}

pub fn toy() -> DissimilarityMatrix {
    build_matrix(&toy_points(), Metric::Euclidean).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symmetric matrix with iid off-diagonal entries in `[0.01, 1)`; generally
/// violates the triangle inequality.
pub fn random_matrix(n: usize, seed: u64) -> DissimilarityMatrix {
    let mut r = rng(seed);
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = r.gen_range(0.01..1.0);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    validate_matrix(&m).unwrap()
}

/// Symmetric matrix with small integer entries in `1..=levels`, so rows have
/// many ties.
pub fn tied_matrix(n: usize, levels: u32, seed: u64) -> DissimilarityMatrix {
    let mut r = rng(seed);
    let mut m = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let v = f64::from(r.gen_range(1..=levels));
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    validate_matrix(&m).unwrap()
}

/// Euclidean matrix of Gaussian points around `groups` random centres.
pub fn clustered_matrix(n: usize, groups: usize, spread: f64, seed: u64) -> DissimilarityMatrix {
    let mut r = rng(seed);
    let centres: Vec<[f64; 2]> = (0..groups)
        .map(|_| [r.gen_range(-10.0..10.0), r.gen_range(-10.0..10.0)])
        .collect();
    let rows: Vec<[f64; 2]> = (0..n)
        .map(|i| {
            let c = centres[i % groups];
            [c[0] + spread * r.gen_range(-1.0..1.0), c[1] + spread * r.gen_range(-1.0..1.0)]
        })
        .collect();
    build_matrix(&PointSet::from_rows(&rows).unwrap(), Metric::Euclidean).unwrap()
}

pub fn random_points(n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| (0..dim).map(|_| r.gen_range(-5.0..5.0)).collect())
        .collect()
}

/// Random labels in `0..k` with every cluster used at least once.
pub fn random_clustering(n: usize, k: usize, seed: u64) -> Clustering {
    let mut r = rng(seed);
    let mut labels: Vec<usize> = (0..n).map(|i| if i < k { i } else { r.gen_range(0..k) }).collect();
    for i in (1..n).rev() {
        labels.swap(i, r.gen_range(0..=i));
    }
    Clustering::new(labels, k).unwrap()
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tol {tol})");
}

/// Silhouette components straight from the definition: `(a, b, s, asw)`.
pub fn naive_silhouette(d: &DissimilarityMatrix, labels: &[usize]) -> (Vec<Option<f64>>, Vec<f64>, Vec<f64>, f64) {
    let n = labels.len();
    let k = labels.iter().max().unwrap() + 1;
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut s = Vec::new();
    for i in 0..n {
        let mut own_sum = 0.0;
        let mut own_cnt = 0;
        for j in 0..n {
            if j != i && labels[j] == labels[i] {
                own_sum += d.get(i, j);
                own_cnt += 1;
            }
        }
        let mut bi = f64::INFINITY;
        for c in 0..k {
            if c == labels[i] {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&j| labels[j] == c).collect();
            let mean = members.iter().map(|&j| d.get(i, j)).sum::<f64>() / members.len() as f64;
            if mean < bi {
                bi = mean;
            }
        }
        let ai = (own_cnt > 0).then(|| own_sum / own_cnt as f64);
        let si = match ai {
            None => 0.0,
            Some(ai) if ai < bi => 1.0 - ai / bi,
            Some(ai) if ai > bi => bi / ai - 1.0,
            Some(_) => 0.0,
        };
        a.push(ai);
        b.push(bi);
        s.push(si);
    }
    let asw = s.iter().sum::<f64>() / n as f64;
    (a, b, s, asw)
}

/// Λ-quotient from a freshly sorted copy of the row and direct sums.
pub fn naive_quotient(d: &DissimilarityMatrix, i: usize, lambda: usize) -> f64 {
    let n = d.n();
    if lambda == 1 {
        return 1.0;
    }
    let mut row: Vec<f64> = (0..n).filter(|&j| j != i).map(|j| d.get(i, j)).collect();
    row.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let head: f64 = row[..lambda - 1].iter().sum();
    let tail: f64 = row[lambda - 1..].iter().sum();
    (n - lambda) as f64 / (lambda - 1) as f64 * head / tail
}

/// `(1 − min quotient, smallest minimiser)` over `Λ ∈ {κ, …, n − κ}`.
pub fn naive_bound(d: &DissimilarityMatrix, i: usize, kappa: usize) -> (f64, usize) {
    let n = d.n();
    let mut best = (f64::INFINITY, 0);
    for lambda in kappa..=(n - kappa) {
        let q = naive_quotient(d, i, lambda);
        if q < best.0 {
            best = (q, lambda);
        }
    }
    (1.0 - best.0, best.1)
}

/// Bell numbers from the Bell triangle.
pub fn bell_triangle(n: usize) -> u64 {
    let mut row = vec![1u64];
    for _ in 1..n {
        let mut next = vec![*row.last().unwrap()];
        for &v in &row {
            let last = *next.last().unwrap();
            next.push(last + v);
        }
        row = next;
    }
    *row.last().unwrap()
}

/// Stirling numbers of the second kind by the standard recurrence.
pub fn stirling2(n: usize, k: usize) -> u64 {
    let mut t = vec![vec![0u64; n + 1]; n + 1];
    t[0][0] = 1;
    for i in 1..=n {
        for j in 1..=i {
            t[i][j] = j as u64 * t[i - 1][j] + t[i - 1][j - 1];
        }
    }
    t[n][k]
}

/// Every restricted-growth string of length `n`, by brute-force filtering of
/// all `n^n` label vectors.
pub fn brute_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = n.pow(n as u32);
    for mut code in 0..total {
        let mut labels = vec![0; n];
        for l in labels.iter_mut() {
            *l = code % n;
            code /= n;
        }
        let mut max_seen: isize = -1;
        let ok = labels.iter().all(|&l| {
            let fine = (l as isize) <= max_seen + 1;
            max_seen = max_seen.max(l as isize);
            fine
        });
        if ok {
            out.push(labels);
        }
    }
    out.sort();
    out
}
