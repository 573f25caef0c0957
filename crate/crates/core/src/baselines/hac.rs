use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::BaselineError;
use crate::matrix::DissimilarityMatrix;
use crate::silhouette::Clustering;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Linkage {
    /// `D(A ∪ B, C) = min(D(A, C), D(B, C))`
    Single,
    /// WPGMA: `D(A ∪ B, C) = (D(A, C) + D(B, C)) / 2`
    Weighted,
}

impl Linkage {
    pub fn name(self) -> &'static str {
        match self {
            Linkage::Single => "single",
            Linkage::Weighted => "weighted",
        }
    }

    #[inline]
    fn update(self, a: f64, b: f64) -> f64 {
        match self {
            Linkage::Single => a.min(b),
            Linkage::Weighted => 0.5 * (a + b),
        }
    }
}

impl fmt::Display for Linkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownLinkage;

impl fmt::Display for UnknownLinkage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown linkage (expected single or weighted)")
    }
}

impl core::error::Error for UnknownLinkage {}

impl FromStr for Linkage {
    type Err = UnknownLinkage;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "single" => Ok(Linkage::Single),
            "weighted" | "wpgma" => Ok(Linkage::Weighted),
            _ => Err(UnknownLinkage),
        }
    }
}

/// One agglomeration step. Leaves are nodes `0..n`; the cluster created by
/// merge `t` is node `n + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Merge {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    /// Number of points under the new node.
    pub size: usize,
}

/// `n − 1` merges in the order they were performed. Heights may decrease
/// under weighted linkage.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    n: usize,
    merges: Vec<Merge>,
}

impl Dendrogram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn merges(&self) -> &[Merge] {
        &self.merges
    }
}

/// Agglomerative clustering with Lance–Williams updates on a copy of `delta`.
///
/// Each step merges the closest pair of active clusters; ties go to the
/// smallest `(i, j)` slot pair, where a merged cluster keeps the lower slot.
/// `O(n³)` time, `O(n²)` memory.
pub fn hac(delta: &DissimilarityMatrix, linkage: Linkage) -> Dendrogram {
    let n = delta.n();
    let mut d = delta.as_slice().to_vec();
    let mut active: Vec<bool> = alloc::vec![true; n];
    let mut node: Vec<usize> = (0..n).collect();
    let mut size: Vec<usize> = alloc::vec![1; n];
    let mut merges = Vec::with_capacity(n.saturating_sub(1));
    for step in 0..n.saturating_sub(1) {
        let (mut bi, mut bj, mut best) = (0, 0, f64::INFINITY);
        for i in (0..n).filter(|&i| active[i]) {
            for j in ((i + 1)..n).filter(|&j| active[j]) {
                if d[i * n + j] < best {
                    (bi, bj, best) = (i, j, d[i * n + j]);
                }
            }
        }
        merges.push(Merge {
            left: node[bi],
            right: node[bj],
            height: best,
            size: size[bi] + size[bj],
        });
        for c in (0..n).filter(|&c| active[c] && c != bi && c != bj) {
            let v = linkage.update(d[bi * n + c], d[bj * n + c]);
            d[bi * n + c] = v;
            d[c * n + bi] = v;
        }
        active[bj] = false;
        node[bi] = n + step;
        size[bi] += size[bj];
    }
    Dendrogram { n, merges }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Undoes the last `k − 1` merges; the remaining components are the
/// clusters, numbered by their smallest member.
pub fn cut_dendrogram(dendrogram: &Dendrogram, k: usize) -> Result<Clustering, BaselineError> {
    let n = dendrogram.n;
    if k == 0 || k > n {
        return Err(BaselineError::KOutOfRange { k, n });
    }
    let mut parent: Vec<usize> = (0..n).collect();
    // representative point of every node
    let mut rep: Vec<usize> = (0..n).collect();
    for m in &dendrogram.merges[..n - k] {
        let (a, b) = (find(&mut parent, rep[m.left]), find(&mut parent, rep[m.right]));
        parent[b] = a;
        rep.push(a);
    }
    let roots: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    Ok(Clustering::from_ids(&roots)?)
}
