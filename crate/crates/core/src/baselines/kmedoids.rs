use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::BaselineError;
use crate::matrix::DissimilarityMatrix;
use crate::silhouette::{asw, Clustering};

#[derive(Debug, Clone, PartialEq)]
pub struct KMedoidsFit {
    pub clustering: Clustering,
    /// Medoid of cluster `c` is `medoids[c]`.
    pub medoids: Vec<usize>,
    pub asw: f64,
    /// ASW of the greedy initialisation.
    pub initial_asw: f64,
    pub swaps: usize,
}

/// Nearest-medoid assignment; medoids always keep their own cluster and
/// distance ties go to the earlier medoid.
fn assign(delta: &DissimilarityMatrix, medoids: &[usize]) -> Clustering {
    let labels = (0..delta.n())
        .map(|i| {
            if let Some(c) = medoids.iter().position(|&m| m == i) {
                return c;
            }
            let mut best = 0;
            for (c, &m) in medoids.iter().enumerate().skip(1) {
                if delta.get(i, m) < delta.get(i, medoids[best]) {
                    best = c;
                }
            }
            best
        })
        .collect();
    Clustering::new(labels, medoids.len()).expect("every medoid owns itself")
}

/// Greedy BUILD: the most central point first, then repeatedly the point
/// that most reduces total distance to the nearest medoid.
fn build(delta: &DissimilarityMatrix, k: usize) -> Vec<usize> {
    let n = delta.n();
    let mut medoids = Vec::with_capacity(k);
    let first = (0..n)
        .map(|i| (i, delta.row(i).iter().sum::<f64>()))
        .fold((0, f64::INFINITY), |acc, (i, s)| if s < acc.1 { (i, s) } else { acc });
    medoids.push(first.0);
    let mut nearest: Vec<f64> = delta.row(first.0).to_vec();
    while medoids.len() < k {
        let mut best = (usize::MAX, f64::NEG_INFINITY);
        for c in (0..n).filter(|c| !medoids.contains(c)) {
            let gain: f64 = (0..n).map(|j| (nearest[j] - delta.get(c, j)).max(0.0)).sum();
            if gain > best.1 {
                best = (c, gain);
            }
        }
        medoids.push(best.0);
        for (j, d) in nearest.iter_mut().enumerate() {
            *d = d.min(delta.get(best.0, j));
        }
    }
    medoids
}

/// k-medoids that maximises the ASW of the nearest-medoid assignment.
///
/// Starts from a greedy BUILD initialisation, then applies first-improvement
/// medoid/non-medoid swaps until no single swap raises the ASW. The seed
/// only fixes the order in which swap candidates are tried.
pub fn kmedoids_asw(
    delta: &DissimilarityMatrix,
    k: usize,
    seed: u64,
) -> Result<KMedoidsFit, BaselineError> {
    let n = delta.n();
    if k < 2 {
        return Err(BaselineError::InvalidConfig("k-medoids needs k >= 2"));
    }
    if k > n {
        return Err(BaselineError::KTooLarge { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut medoids = build(delta, k);
    let mut clustering = assign(delta, &medoids);
    let initial_asw = asw(delta, &clustering)?;
    let mut current = initial_asw;
    let mut swaps = 0;

    let mut order: Vec<usize> = (0..n).collect();
    loop {
        order.shuffle(&mut rng);
        let mut improved = false;
        for slot in 0..k {
            for &h in &order {
                if medoids.contains(&h) {
                    continue;
                }
                let old = medoids[slot];
                medoids[slot] = h;
                let candidate = assign(delta, &medoids);
                let score = asw(delta, &candidate)?;
                if score > current {
                    current = score;
                    clustering = candidate;
                    swaps += 1;
                    improved = true;
                } else {
                    medoids[slot] = old;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Ok(KMedoidsFit {
        clustering,
        medoids,
        asw: current,
        initial_asw,
        swaps,
    })
}
