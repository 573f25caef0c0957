//! Dissimilarity matrices: construction from points, validation of raw
//! matrices, and the row-sorted form the bound scan works on.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::sum::KahanSum;

/// Relative tolerance used when checking symmetry of a raw matrix.
pub const SYMMETRY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error("TooFewPoints: need at least 2 observations, got {n}")]
    TooFewPoints { n: usize },
    #[error("EmptyFeatures: points must have at least one feature column")]
    EmptyFeatures,
    #[error("RaggedRows: row {row} has {found} values, expected {expected}")]
    RaggedRows {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("NonFiniteInput: point {row}, feature {col} is not a finite number")]
    NonFiniteInput { row: usize, col: usize },
    #[error("ZeroVector: point {row} has zero norm (or zero variance) under the chosen metric")]
    ZeroVector { row: usize },
    #[error("NonBinaryInput: point {row}, feature {col} is not 0 or 1 (jaccard needs binary data)")]
    NonBinaryInput { row: usize, col: usize },
    #[error("NotSquare: matrix has {rows} rows but row {row} has {cols} columns")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("NonFiniteEntry({row},{col}): entry is not a finite number")]
    NonFiniteEntry { row: usize, col: usize },
    #[error("NegativeEntry({row},{col}): nonnegativity violated, value {value}")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("NonzeroDiagonal({index}): zero diagonal violated, value {value}")]
    NonzeroDiagonal { index: usize, value: f64 },
    #[error("Asymmetric({row},{col}): symmetry violated, {upper} vs {lower}")]
    Asymmetric {
        row: usize,
        col: usize,
        upper: f64,
        lower: f64,
    },
    #[error("AllZeroRow({row}): every dissimilarity from point {row} is zero")]
    AllZeroRow { row: usize },
    #[error("UnsortedRow({row}): sorted row is not ascending or has the wrong length")]
    UnsortedRow { row: usize },
}

impl MatrixError {
    /// Short machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::TooFewPoints { .. } => "TooFewPoints",
            Self::EmptyFeatures => "EmptyFeatures",
            Self::RaggedRows { .. } => "RaggedRows",
            Self::NonFiniteInput { .. } => "NonFiniteInput",
            Self::ZeroVector { .. } => "ZeroVector",
            Self::NonBinaryInput { .. } => "NonBinaryInput",
            Self::NotSquare { .. } => "NotSquare",
            Self::NonFiniteEntry { .. } => "NonFiniteEntry",
            Self::NegativeEntry { .. } => "NegativeEntry",
            Self::NonzeroDiagonal { .. } => "NonzeroDiagonal",
            Self::Asymmetric { .. } => "Asymmetric",
            Self::AllZeroRow { .. } => "AllZeroRow",
            Self::UnsortedRow { .. } => "UnsortedRow",
        }
    }
}

/// `n` observations with `m` real-valued features, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    n: usize,
    m: usize,
    data: Vec<f64>,
}

impl PointSet {
    pub fn new(n: usize, m: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        if n < 2 {
            return Err(MatrixError::TooFewPoints { n });
        }
        if m == 0 {
            return Err(MatrixError::EmptyFeatures);
        }
        if data.len() != n * m {
            let row = data.len() / m;
            return Err(MatrixError::RaggedRows {
                row: row.min(n - 1),
                expected: m,
                found: data.len() - row.min(n - 1) * m,
            });
        }
        if let Some(pos) = data.iter().position(|x| !x.is_finite()) {
            return Err(MatrixError::NonFiniteInput {
                row: pos / m,
                col: pos % m,
            });
        }
        Ok(Self { n, m, data })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self, MatrixError> {
        let m = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * m);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != m {
                return Err(MatrixError::RaggedRows {
                    row,
                    expected: m,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Self::new(rows.len(), m, data)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.m..(i + 1) * self.m]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }
}

/// Dissimilarity measure used to turn points into a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    Euclidean,
    /// `1 − cos(x, y)`.
    Cosine,
    /// `1 − Pearson(x, y)`.
    Correlation,
    /// `1 − |x ∧ y| / |x ∨ y|` on binary vectors.
    Jaccard,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::Euclidean,
        Metric::Cosine,
        Metric::Correlation,
        Metric::Jaccard,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::Cosine => "cosine",
            Metric::Correlation => "correlation",
            Metric::Jaccard => "jaccard",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownMetric;

impl fmt::Display for UnknownMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown metric (expected euclidean, cosine, correlation or jaccard)")
    }
}

impl core::error::Error for UnknownMetric {}

impl FromStr for Metric {
    type Err = UnknownMetric;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s))
            .ok_or(UnknownMetric)
    }
}

/// A validated `n × n` dissimilarity matrix: finite, nonnegative, zero
/// diagonal, symmetric, and without an all-zero row. The triangle inequality
/// is not required.
#[derive(Debug, Clone, PartialEq)]
pub struct DissimilarityMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DissimilarityMatrix {
    /// Validates a row-major `n × n` buffer.
    pub fn from_flat(n: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        if n < 2 {
            return Err(MatrixError::TooFewPoints { n });
        }
        if data.len() != n * n {
            return Err(MatrixError::NotSquare {
                rows: n,
                row: (data.len() / n).min(n - 1),
                cols: data.len() % n,
            });
        }
        check_and_symmetrize(n, data)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Returns `c · Δ`. Panics unless `c` is finite and positive.
    pub fn scaled(&self, c: f64) -> Self {
        assert!(c.is_finite() && c > 0.0, "scale factor must be positive");
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    /// Restricts the matrix to the given points, in the given order.
    pub fn submatrix(&self, idx: &[usize]) -> Result<Self, MatrixError> {
        let k = idx.len();
        let mut data = Vec::with_capacity(k * k);
        for &i in idx {
            for &j in idx {
                data.push(self.get(i, j));
            }
        }
        Self::from_flat(k, data)
    }
}

/// Validates a raw square matrix given as rows.
///
/// Entries whose mirror differs by at most `1e-9 · max(1, |d|)` are
/// accepted and replaced by the mean of the pair.
pub fn validate_matrix<R: AsRef<[f64]>>(raw: &[R]) -> Result<DissimilarityMatrix, MatrixError> {
    let n = raw.len();
    if n < 2 {
        return Err(MatrixError::TooFewPoints { n });
    }
    let mut data = Vec::with_capacity(n * n);
    for (row, r) in raw.iter().enumerate() {
        let r = r.as_ref();
        if r.len() != n {
            return Err(MatrixError::NotSquare {
                rows: n,
                row,
                cols: r.len(),
            });
        }
        data.extend_from_slice(r);
    }
    check_and_symmetrize(n, data)
}

fn check_and_symmetrize(n: usize, mut data: Vec<f64>) -> Result<DissimilarityMatrix, MatrixError> {
    for i in 0..n {
        for j in 0..n {
            let v = data[i * n + j];
            if !v.is_finite() {
                return Err(MatrixError::NonFiniteEntry { row: i, col: j });
            }
            if v < 0.0 {
                return Err(MatrixError::NegativeEntry {
                    row: i,
                    col: j,
                    value: v,
                });
            }
        }
    }
    for i in 0..n {
        let v = data[i * n + i];
        if v != 0.0 {
            return Err(MatrixError::NonzeroDiagonal { index: i, value: v });
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let upper = data[i * n + j];
            let lower = data[j * n + i];
            if upper != lower {
                let scale = libm::fmax(1.0, libm::fmax(upper, lower));
                if libm::fabs(upper - lower) > SYMMETRY_TOLERANCE * scale {
                    return Err(MatrixError::Asymmetric {
                        row: i,
                        col: j,
                        upper,
                        lower,
                    });
                }
                let mean = 0.5 * (upper + lower);
                data[i * n + j] = mean;
                data[j * n + i] = mean;
            }
        }
    }
    for i in 0..n {
        if data[i * n..(i + 1) * n].iter().all(|&v| v == 0.0) {
            return Err(MatrixError::AllZeroRow { row: i });
        }
    }
    Ok(DissimilarityMatrix { n, data })
}

/// Computes the pairwise dissimilarity matrix of `points` under `metric`.
pub fn build_matrix(points: &PointSet, metric: Metric) -> Result<DissimilarityMatrix, MatrixError> {
    let n = points.n();
    let mut data = vec![0.0; n * n];
    match metric {
        Metric::Euclidean => fill_pairs(n, &mut data, |i, j| {
            let sq: f64 = points
                .row(i)
                .iter()
                .zip(points.row(j))
                .map(|(a, b)| (a - b) * (a - b))
                .sum();
            libm::sqrt(sq)
        }),
        Metric::Cosine => {
            let norms = row_norms(points, None)?;
            fill_pairs(n, &mut data, |i, j| {
                let dot: f64 = points.row(i).iter().zip(points.row(j)).map(|(a, b)| a * b).sum();
                cosine_distance(dot, norms[i], norms[j])
            });
        }
        Metric::Correlation => {
            let means: Vec<f64> = (0..n)
                .map(|i| points.row(i).iter().sum::<f64>() / points.dim() as f64)
                .collect();
            let norms = row_norms(points, Some(&means))?;
            fill_pairs(n, &mut data, |i, j| {
                let dot: f64 = points
                    .row(i)
                    .iter()
                    .zip(points.row(j))
                    .map(|(a, b)| (a - means[i]) * (b - means[j]))
                    .sum();
                cosine_distance(dot, norms[i], norms[j])
            });
        }
        Metric::Jaccard => {
            for (pos, &v) in points.as_slice().iter().enumerate() {
                if v != 0.0 && v != 1.0 {
                    return Err(MatrixError::NonBinaryInput {
                        row: pos / points.dim(),
                        col: pos % points.dim(),
                    });
                }
            }
            fill_pairs(n, &mut data, |i, j| {
                let (mut both, mut either) = (0usize, 0usize);
                for (&a, &b) in points.row(i).iter().zip(points.row(j)) {
                    let (a, b) = (a == 1.0, b == 1.0);
                    both += usize::from(a && b);
                    either += usize::from(a || b);
                }
                if either == 0 {
                    0.0
                } else {
                    1.0 - both as f64 / either as f64
                }
            });
        }
    }
    check_and_symmetrize(n, data)
}

fn fill_pairs(n: usize, data: &mut [f64], mut dist: impl FnMut(usize, usize) -> f64) {
    for i in 0..n {
        for j in (i + 1)..n {
            let d = dist(i, j);
            data[i * n + j] = d;
            data[j * n + i] = d;
        }
    }
}

fn row_norms(points: &PointSet, centers: Option<&[f64]>) -> Result<Vec<f64>, MatrixError> {
    (0..points.n())
        .map(|i| {
            let c = centers.map_or(0.0, |c| c[i]);
            let sq: f64 = points.row(i).iter().map(|x| (x - c) * (x - c)).sum();
            let norm = libm::sqrt(sq);
            if norm > 0.0 {
                Ok(norm)
            } else {
                Err(MatrixError::ZeroVector { row: i })
            }
        })
        .collect()
}

fn cosine_distance(dot: f64, ni: f64, nj: f64) -> f64 {
    // rounding can push 1 − cos slightly outside [0, 2]
    (1.0 - dot / (ni * nj)).clamp(0.0, 2.0)
}

/// Off-diagonal entries of each row sorted ascending, plus per-row prefix
/// sums so that any contiguous range sum is `O(1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedDissimilarity {
    n: usize,
    /// `n × (n − 1)`, row-major.
    rows: Vec<f64>,
    /// `n × n`, `prefix[i][k]` is the sum of the first `k` sorted entries of row `i`.
    prefix: Vec<f64>,
}

impl SortedDissimilarity {
    /// Assembles from rows already produced by [`sort_row`], checking that
    /// each has length `n − 1` and is ascending.
    pub fn from_sorted_rows(n: usize, rows: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        if n < 2 || rows.len() != n {
            return Err(MatrixError::TooFewPoints { n: rows.len() });
        }
        let mut flat = Vec::with_capacity(n * (n - 1));
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != n - 1 || r.windows(2).any(|w| w[0].is_nan() || w[1].is_nan() || w[0] > w[1]) {
                return Err(MatrixError::UnsortedRow { row: i });
            }
            flat.extend(r);
        }
        Ok(Self::from_flat_rows(n, flat))
    }

    fn from_flat_rows(n: usize, rows: Vec<f64>) -> Self {
        let w = n - 1;
        let mut prefix = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut acc = KahanSum::new();
            prefix.push(0.0);
            for &v in &rows[i * w..(i + 1) * w] {
                acc.add(v);
                prefix.push(acc.value());
            }
        }
        Self { n, rows, prefix }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted off-diagonal entries of row `i` (length `n − 1`).
    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        let w = self.n - 1;
        &self.rows[i * w..(i + 1) * w]
    }

    /// Prefix sums of row `i` (length `n`, first entry 0).
    #[inline]
    pub fn prefix(&self, i: usize) -> &[f64] {
        &self.prefix[i * self.n..(i + 1) * self.n]
    }

    /// Sum of sorted entries `lo..hi` (0-based, half-open) of row `i`.
    #[inline]
    pub fn range_sum(&self, i: usize, lo: usize, hi: usize) -> f64 {
        let p = self.prefix(i);
        p[hi] - p[lo]
    }
}

/// Off-diagonal entries of row `i`, sorted ascending. Ties keep column order.
pub fn sort_row(delta: &DissimilarityMatrix, i: usize) -> Vec<f64> {
    let mut row: Vec<f64> = delta
        .row(i)
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &v)| v)
        .collect();
    // entries are finite, so total_cmp agrees with numeric order
    row.sort_by(f64::total_cmp);
    row
}

pub fn sort_rows(delta: &DissimilarityMatrix) -> SortedDissimilarity {
    let n = delta.n();
    let mut flat = Vec::with_capacity(n * (n - 1));
    for i in 0..n {
        flat.extend(sort_row(delta, i));
    }
    SortedDissimilarity::from_flat_rows(n, flat)
}

/// Indices of the points nearest to `i` (excluding `i`), nearest first, ties
/// broken by index.
pub fn neighbors_by_distance(delta: &DissimilarityMatrix, i: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..delta.n()).filter(|&j| j != i).collect();
    idx.sort_by(|&a, &b| delta.get(i, a).total_cmp(&delta.get(i, b)).then(a.cmp(&b)));
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn toy_points() -> PointSet {
        PointSet::from_rows(&[[1.0, 2.0], [2.0, 1.0], [1.5, 2.5], [6.0, 2.0], [6.0, 3.0]]).unwrap()
    }

    #[test]
    fn toy_euclidean_matches_displayed_matrix() {
        let d = build_matrix(&toy_points(), Metric::Euclidean).unwrap();
        let expected = [
            [0.0, 1.414, 0.707, 5.000, 5.099],
            [1.414, 0.0, 1.581, 4.123, 4.472],
            [0.707, 1.581, 0.0, 4.528, 4.528],
            [5.000, 4.123, 4.528, 0.0, 1.000],
            [5.099, 4.472, 4.528, 1.000, 0.0],
        ];
        for i in 0..5 {
            for j in 0..5 {
                assert!((d.get(i, j) - expected[i][j]).abs() < 1e-3, "({i},{j})");
            }
        }
    }

    #[test]
    fn identical_binary_points_give_all_zero_row() {
        let p = PointSet::from_rows(&[[1.0, 0.0, 1.0], [1.0, 0.0, 1.0]]).unwrap();
        assert_eq!(
            build_matrix(&p, Metric::Jaccard),
            Err(MatrixError::AllZeroRow { row: 0 })
        );
    }

    #[test]
    fn duplicates_are_fine_when_other_points_differ() {
        let p = PointSet::from_rows(&[[0.0], [0.0], [3.0]]).unwrap();
        let d = build_matrix(&p, Metric::Euclidean).unwrap();
        assert_eq!(d.get(0, 1), 0.0);
        assert_eq!(d.get(0, 2), 3.0);
    }

    #[test]
    fn jaccard_values() {
        let p = PointSet::from_rows(&[[1.0, 1.0, 0.0, 0.0], [1.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]])
            .unwrap();
        let d = build_matrix(&p, Metric::Jaccard).unwrap();
        assert!((d.get(0, 1) - (1.0 - 1.0 / 3.0)).abs() < 1e-15);
        assert_eq!(d.get(0, 2), 1.0);
    }

    #[test]
    fn jaccard_rejects_non_binary() {
        let p = PointSet::from_rows(&[[1.0, 0.5], [0.0, 1.0]]).unwrap();
        assert_eq!(
            build_matrix(&p, Metric::Jaccard),
            Err(MatrixError::NonBinaryInput { row: 0, col: 1 })
        );
    }

    #[test]
    fn cosine_and_correlation() {
        let p = PointSet::from_rows(&[[1.0, 0.0], [0.0, 1.0], [2.0, 0.0]]).unwrap();
        let d = build_matrix(&p, Metric::Cosine).unwrap();
        assert!((d.get(0, 1) - 1.0).abs() < 1e-15);
        assert_eq!(d.get(0, 2), 0.0);

        let p = PointSet::from_rows(&[[1.0, 2.0, 3.0], [3.0, 2.0, 1.0], [2.0, 4.0, 6.5]]).unwrap();
        let d = build_matrix(&p, Metric::Correlation).unwrap();
        assert!((d.get(0, 1) - 2.0).abs() < 1e-12);
        assert!(d.get(0, 2) < 1e-2);
    }

    #[test]
    fn zero_vectors_rejected() {
        let p = PointSet::from_rows(&[[1.0, 1.0], [0.0, 0.0]]).unwrap();
        assert_eq!(
            build_matrix(&p, Metric::Cosine),
            Err(MatrixError::ZeroVector { row: 1 })
        );
        let p = PointSet::from_rows(&[[4.0, 4.0, 4.0], [0.0, 1.0, 2.0]]).unwrap();
        assert_eq!(
            build_matrix(&p, Metric::Correlation),
            Err(MatrixError::ZeroVector { row: 0 })
        );
    }

    #[test]
    fn point_set_rejects_bad_input() {
        assert_eq!(
            PointSet::from_rows(&[[1.0, f64::NAN], [0.0, 0.0]]),
            Err(MatrixError::NonFiniteInput { row: 0, col: 1 })
        );
        assert_eq!(
            PointSet::from_rows(&[vec![1.0, 2.0], vec![1.0]]),
            Err(MatrixError::RaggedRows {
                row: 1,
                expected: 2,
                found: 1
            })
        );
        assert_eq!(
            PointSet::from_rows(&[[1.0]]),
            Err(MatrixError::TooFewPoints { n: 1 })
        );
    }

    #[test]
    fn validation_errors() {
        let mut m = vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 3.0], vec![2.0, 3.0, 0.0]];
        assert!(validate_matrix(&m).is_ok());

        m[0][0] = 0.1;
        assert_eq!(
            validate_matrix(&m),
            Err(MatrixError::NonzeroDiagonal { index: 0, value: 0.1 })
        );
        m[0][0] = 0.0;

        m[1][2] = -1.0;
        assert!(matches!(
            validate_matrix(&m),
            Err(MatrixError::NegativeEntry { row: 1, col: 2, .. })
        ));
        m[1][2] = f64::INFINITY;
        assert_eq!(
            validate_matrix(&m),
            Err(MatrixError::NonFiniteEntry { row: 1, col: 2 })
        );
        m[1][2] = 3.0;

        m[2].pop();
        assert_eq!(
            validate_matrix(&m),
            Err(MatrixError::NotSquare {
                rows: 3,
                row: 2,
                cols: 2
            })
        );
    }

    #[test]
    fn asymmetry_detected_and_last_ulp_tolerated() {
        let mut m = vec![vec![0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    m[i][j] = 1.0;
                }
            }
        }
        m[1][2] = 2.0;
        m[2][1] = 3.0;
        assert!(matches!(
            validate_matrix(&m),
            Err(MatrixError::Asymmetric { row: 1, col: 2, .. })
        ));

        m[1][2] = 0.3;
        m[2][1] = 0.1 + 0.2;
        let d = validate_matrix(&m).unwrap();
        assert_eq!(d.get(1, 2), d.get(2, 1));
    }

    #[test]
    fn all_zero_row_rejected() {
        let m = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        assert_eq!(validate_matrix(&m), Err(MatrixError::AllZeroRow { row: 0 }));
    }

    #[test]
    fn non_metric_matrices_accepted() {
        // d(0,2) > d(0,1) + d(1,2)
        let m = [[0.0, 1.0, 10.0], [1.0, 0.0, 1.0], [10.0, 1.0, 0.0]];
        assert!(validate_matrix(&m).is_ok());
    }

    #[test]
    fn toy_sorted_rows() {
        let d = build_matrix(&toy_points(), Metric::Euclidean).unwrap();
        let s = sort_rows(&d);
        let expect = [
            [0.707, 1.414, 5.000, 5.099],
            [1.414, 1.581, 4.123, 4.472],
            [0.707, 1.581, 4.528, 4.528],
            [1.000, 4.123, 4.528, 5.000],
            [1.000, 4.472, 4.528, 5.099],
        ];
        for (i, row) in expect.iter().enumerate() {
            for (a, b) in s.row(i).iter().zip(row) {
                assert!((a - b).abs() < 1e-3);
            }
            assert!((s.range_sum(i, 0, 4) - row.iter().sum::<f64>()).abs() < 5e-3);
        }
    }

    #[test]
    fn constant_matrix_rows() {
        let n = 6;
        let c = 2.5;
        let mut m = vec![vec![c; n]; n];
        for (i, r) in m.iter_mut().enumerate() {
            r[i] = 0.0;
        }
        let s = sort_rows(&validate_matrix(&m).unwrap());
        for i in 0..n {
            assert!(s.row(i).iter().all(|&v| v == c));
            assert_eq!(s.prefix(i)[n - 1], c * (n - 1) as f64);
        }
    }

    #[test]
    fn from_sorted_rows_checks_order() {
        assert!(SortedDissimilarity::from_sorted_rows(2, vec![vec![1.0], vec![1.0]]).is_ok());
        assert_eq!(
            SortedDissimilarity::from_sorted_rows(3, vec![vec![1.0, 2.0], vec![2.0, 1.0], vec![1.0, 1.0]]),
            Err(MatrixError::UnsortedRow { row: 1 })
        );
    }

    #[test]
    fn neighbors_ties_by_index() {
        let m = [[0.0, 2.0, 1.0, 2.0], [2.0, 0.0, 1.0, 1.0], [1.0, 1.0, 0.0, 1.0], [2.0, 1.0, 1.0, 0.0]];
        let d = validate_matrix(&m).unwrap();
        assert_eq!(neighbors_by_distance(&d, 0), vec![2, 1, 3]);
    }

    #[test]
    fn metric_parsing() {
        assert_eq!("Cosine".parse::<Metric>(), Ok(Metric::Cosine));
        assert!("manhattan".parse::<Metric>().is_err());
    }
}
