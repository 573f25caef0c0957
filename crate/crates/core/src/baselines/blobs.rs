use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::BaselineError;
use crate::matrix::PointSet;

/// Half the side of the box centres are drawn from.
pub const CENTER_BOX_HALF_WIDTH: f64 = 10.0;

/// Parameters of an isotropic Gaussian blob dataset, written
/// `n_samples-n_features-centers-cluster_std` (e.g. `400-64-5-6`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlobSpec {
    pub n_samples: usize,
    pub n_features: usize,
    pub centers: usize,
    pub cluster_std: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseBlobSpecError;

impl fmt::Display for ParseBlobSpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("expected n_samples-n_features-centers-cluster_std, e.g. 400-64-5-6")
    }
}

impl core::error::Error for ParseBlobSpecError {}

impl FromStr for BlobSpec {
    type Err = ParseBlobSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.trim().splitn(4, '-');
        let mut int = || -> Result<usize, ParseBlobSpecError> {
            parts
                .next()
                .and_then(|p| p.parse().ok())
                .filter(|&v: &usize| v > 0)
                .ok_or(ParseBlobSpecError)
        };
        let (n_samples, n_features, centers) = (int()?, int()?, int()?);
        let cluster_std = parts
            .next()
            .and_then(|p| p.parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v >= 0.0)
            .ok_or(ParseBlobSpecError)?;
        Ok(Self {
            n_samples,
            n_features,
            centers,
            cluster_std,
        })
    }
}

impl fmt::Display for BlobSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-{}-{}-{}",
            self.n_samples, self.n_features, self.centers, self.cluster_std
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Blobs {
    pub points: PointSet,
    /// Generating centre of each point.
    pub labels: Vec<usize>,
    /// `centers × n_features`, row-major.
    pub centers: Vec<f64>,
}

/// Draws `centers` centres uniformly from `[-10, 10]^n_features` and splits
/// the samples as evenly as possible between them (the first
/// `n_samples % centers` centres get one extra point). Labels are contiguous
/// blocks `0, 0, …, 1, 1, …`.
pub fn make_blobs(spec: &BlobSpec, seed: u64) -> Result<Blobs, BaselineError> {
    let BlobSpec {
        n_samples,
        n_features,
        centers,
        cluster_std,
    } = *spec;
    if n_samples < 2 || n_features == 0 || centers == 0 {
        return Err(BaselineError::InvalidConfig(
            "blobs need n_samples >= 2, n_features >= 1 and centers >= 1",
        ));
    }
    if !(cluster_std.is_finite() && cluster_std >= 0.0) {
        return Err(BaselineError::InvalidConfig("cluster_std must be finite and nonnegative"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centre_coords: Vec<f64> = (0..centers * n_features)
        .map(|_| rng.gen_range(-CENTER_BOX_HALF_WIDTH..CENTER_BOX_HALF_WIDTH))
        .collect();
    let base = n_samples / centers;
    let extra = n_samples % centers;
    let mut labels = Vec::with_capacity(n_samples);
    for c in 0..centers {
        let count = base + usize::from(c < extra);
        labels.extend(core::iter::repeat(c).take(count));
    }
    let mut normal = GaussianSource::default();
    let mut data = Vec::with_capacity(n_samples * n_features);
    for &c in &labels {
        for f in 0..n_features {
            data.push(centre_coords[c * n_features + f] + cluster_std * normal.sample(&mut rng));
        }
    }
    Ok(Blobs {
        points: PointSet::new(n_samples, n_features, data)?,
        labels,
        centers: centre_coords,
    })
}

/// Standard normal draws by the Box–Muller transform, caching the second
/// variate.
#[derive(Debug, Default)]
struct GaussianSource {
    spare: Option<f64>,
}

impl GaussianSource {
    fn sample<R: Rng>(&mut self, rng: &mut R) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        // u1 in (0, 1] keeps ln finite
        let u1 = 1.0 - rng.gen::<f64>();
        let u2 = rng.gen::<f64>();
        let r = libm::sqrt(-2.0 * libm::log(u1));
        let theta = 2.0 * core::f64::consts::PI * u2;
        self.spare = Some(r * libm::sin(theta));
        r * libm::cos(theta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let s: BlobSpec = "400-64-5-6".parse().unwrap();
        assert_eq!(s.n_samples, 400);
        assert_eq!(s.cluster_std, 6.0);
        assert_eq!(alloc::format!("{s}"), "400-64-5-6");
        let s: BlobSpec = "200-16-4-1.5".parse().unwrap();
        assert_eq!(alloc::format!("{s}"), "200-16-4-1.5");
        assert!("200-16-4".parse::<BlobSpec>().is_err());
        assert!("0-16-4-1".parse::<BlobSpec>().is_err());
        assert!("10-2-2--1".parse::<BlobSpec>().is_err());
    }

    #[test]
    fn sizes_and_determinism() {
        let spec: BlobSpec = "10-3-3-1".parse().unwrap();
        let a = make_blobs(&spec, 5).unwrap();
        assert_eq!(a.labels, [0, 0, 0, 0, 1, 1, 1, 2, 2, 2]);
        assert_eq!(a.points.n(), 10);
        assert_eq!(a.points.dim(), 3);
        assert!(a.centers.iter().all(|c| c.abs() <= CENTER_BOX_HALF_WIDTH));
        assert_eq!(a, make_blobs(&spec, 5).unwrap());
        assert_ne!(a, make_blobs(&spec, 6).unwrap());
    }

    #[test]
    fn zero_std_collapses_to_centres() {
        let spec = BlobSpec {
            n_samples: 6,
            n_features: 2,
            centers: 2,
            cluster_std: 0.0,
        };
        let b = make_blobs(&spec, 1).unwrap();
        for (i, &l) in b.labels.iter().enumerate() {
            assert_eq!(b.points.row(i), &b.centers[l * 2..l * 2 + 2]);
        }
    }

    #[test]
    fn gaussian_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut g = GaussianSource::default();
        let xs: Vec<f64> = (0..20_000).map(|_| g.sample(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / xs.len() as f64;
        assert!(mean.abs() < 0.03);
        assert!((var - 1.0).abs() < 0.05);
    }
}
