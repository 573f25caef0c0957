//! ASW-driven choice of the number of clusters with a bound-based
//! clusterability gate and early stopping.
//!
//! The upper bound `UB` (or `UB_κ`) is computed once. If it does not exceed
//! the threshold `τ` no clustering can reach a useful ASW and the search is
//! skipped. Otherwise `K = 2, 3, …, K_max` are tried in order; whenever a
//! new best ASW `Ŝ` appears, the certified gap `(UB − Ŝ)/UB` is checked and
//! the loop ends as soon as it drops below `ε`.

use alloc::vec::Vec;

use crate::bounds::{bound_report, BoundError};
use crate::matrix::DissimilarityMatrix;
use crate::silhouette::{asw, Clustering, SilhouetteError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarlyStopConfig {
    /// Relative error tolerance in `[0, 1]`; `0` disables early stopping.
    pub epsilon: f64,
    /// Clusterability threshold in `[0, 1]`.
    pub tau: f64,
    pub k_max: usize,
    /// Minimum cluster size; gates and stops on `UB_κ` instead of `UB`.
    pub kappa: Option<usize>,
}

impl EarlyStopConfig {
    pub const fn new(epsilon: f64, tau: f64, k_max: usize) -> Self {
        Self {
            epsilon,
            tau,
            k_max,
            kappa: None,
        }
    }

    pub const fn with_kappa(mut self, kappa: usize) -> Self {
        self.kappa = Some(kappa);
        self
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SelectionError<E> {
    #[error("InvalidConfig: {0}")]
    InvalidConfig(&'static str),
    #[error("NonPositiveUB: upper bound {0} must be positive")]
    NonPositiveUb(f64),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error("AlgorithmFailure(K={k}): {error}")]
    AlgorithmFailure { k: usize, error: E },
    #[error("AlgorithmFailure(K={k}): returned {got} clusters")]
    WrongClusterCount { k: usize, got: usize },
    #[error("AlgorithmFailure(K={k}): {error}")]
    InvalidClustering { k: usize, error: SilhouetteError },
}

impl<E> SelectionError<E> {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::InvalidConfig(_) => "InvalidConfig",
            Self::NonPositiveUb(_) => "NonPositiveUB",
            Self::Bound(e) => e.kind(),
            Self::AlgorithmFailure { .. }
            | Self::WrongClusterCount { .. }
            | Self::InvalidClustering { .. } => "AlgorithmFailure",
        }
    }
}

/// `(UB − Ŝ) / UB`. Exceeds 1 when `Ŝ < 0`.
pub fn worst_case_relative_error<E>(ub: f64, s_hat: f64) -> Result<f64, SelectionError<E>> {
    if ub.is_nan() || ub <= 0.0 {
        return Err(SelectionError::NonPositiveUb(ub));
    }
    Ok((ub - s_hat) / ub)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// `UB ≤ τ`: no algorithm was run.
    NotClusterable,
    Selected,
}

impl Outcome {
    pub fn name(self) -> &'static str {
        match self {
            Outcome::NotClusterable => "NotClusterable",
            Outcome::Selected => "Selected",
        }
    }
}

/// ASW of the clustering produced for one `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KScore {
    pub k: usize,
    pub asw: f64,
    pub worst_case_rel_err: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionResult {
    pub outcome: Outcome,
    /// `None` when not clusterable.
    pub best: Option<Clustering>,
    pub best_asw: f64,
    pub best_k: usize,
    pub ub: f64,
    pub tau: f64,
    pub kappa: usize,
    pub worst_case_rel_err: f64,
    pub stopped_early: bool,
    pub evaluated_ks: Vec<usize>,
    /// Every evaluated `K` in order.
    pub per_k: Vec<KScore>,
}

/// Whether the loop may stop once the tolerance is met.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopMode {
    EarlyStop,
    /// Evaluates every `K` up to `k_max` and records the per-`K` worst-case
    /// relative errors.
    NoStop,
}

pub fn select<F, E>(
    delta: &DissimilarityMatrix,
    algorithm: F,
    config: &EarlyStopConfig,
) -> Result<SelectionResult, SelectionError<E>>
where
    F: FnMut(usize) -> Result<Clustering, E>,
{
    select_with_mode(delta, algorithm, config, StopMode::EarlyStop)
}

pub fn select_with_mode<F, E>(
    delta: &DissimilarityMatrix,
    mut algorithm: F,
    config: &EarlyStopConfig,
    mode: StopMode,
) -> Result<SelectionResult, SelectionError<E>>
where
    F: FnMut(usize) -> Result<Clustering, E>,
{
    let in_unit = |x: f64| (0.0..=1.0).contains(&x);
    if !in_unit(config.epsilon) || !in_unit(config.tau) {
        return Err(SelectionError::InvalidConfig("epsilon and tau must lie in [0, 1]"));
    }
    if config.k_max < 2 || config.k_max > delta.n() {
        return Err(SelectionError::InvalidConfig("k_max must satisfy 2 <= k_max <= n"));
    }
    let kappa = config.kappa.unwrap_or(1);
    let ub = bound_report(delta, kappa)?.ub;

    let mut result = SelectionResult {
        outcome: Outcome::NotClusterable,
        best: None,
        best_asw: f64::NAN,
        best_k: 0,
        ub,
        tau: config.tau,
        kappa,
        worst_case_rel_err: f64::NAN,
        stopped_early: false,
        evaluated_ks: Vec::new(),
        per_k: Vec::new(),
    };
    // ub == 0 would make the relative error undefined; it is never clusterable
    if ub <= config.tau || ub <= 0.0 {
        return Ok(result);
    }
    result.outcome = Outcome::Selected;

    for k in 2..=config.k_max {
        let clustering =
            algorithm(k).map_err(|error| SelectionError::AlgorithmFailure { k, error })?;
        if clustering.k() != k {
            return Err(SelectionError::WrongClusterCount {
                k,
                got: clustering.k(),
            });
        }
        let score = asw(delta, &clustering)
            .map_err(|error| SelectionError::InvalidClustering { k, error })?;
        let err = worst_case_relative_error(ub, score)?;
        result.evaluated_ks.push(k);
        result.per_k.push(KScore {
            k,
            asw: score,
            worst_case_rel_err: err,
        });
        if result.best.is_none() || score > result.best_asw {
            result.best = Some(clustering);
            result.best_asw = score;
            result.best_k = k;
            result.worst_case_rel_err = err;
            if mode == StopMode::EarlyStop && err < config.epsilon {
                result.stopped_early = true;
                return Ok(result);
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{build_matrix, Metric, PointSet};
    use crate::oracle::best_per_k;
    use core::convert::Infallible;

    fn toy() -> DissimilarityMatrix {
        let p = PointSet::from_rows(&[[1.0, 2.0], [2.0, 1.0], [1.5, 2.5], [6.0, 2.0], [6.0, 3.0]])
            .unwrap();
        build_matrix(&p, Metric::Euclidean).unwrap()
    }

    fn oracle_algorithm(d: &DissimilarityMatrix) -> impl FnMut(usize) -> Result<Clustering, Infallible> {
        let table = best_per_k(d, 2..=d.n()).unwrap();
        move |k| Ok(table[k - 2].best.clone())
    }

    #[test]
    fn relative_error_values() {
        let e = |ub, s| worst_case_relative_error::<Infallible>(ub, s).unwrap();
        assert!((e(0.7672, 0.7512) - 0.02).abs() < 5e-3);
        assert!((e(0.7672, 0.0) - 1.0).abs() < 1e-12);
        assert_eq!(e(0.4, 0.4), 0.0);
        assert!(e(0.5, -0.25) > 1.0);
        assert!(matches!(
            worst_case_relative_error::<Infallible>(0.0, 0.1),
            Err(SelectionError::NonPositiveUb(_))
        ));
    }

    #[test]
    fn toy_stops_at_two() {
        let d = toy();
        let r = select(&d, oracle_algorithm(&d), &EarlyStopConfig::new(0.05, 0.0, 5)).unwrap();
        assert_eq!(r.outcome, Outcome::Selected);
        assert!(r.stopped_early);
        assert_eq!(r.evaluated_ks, [2]);
        assert_eq!(r.best_k, 2);
        assert!((r.best_asw - 0.7512).abs() < 1e-3);
        assert!((r.worst_case_rel_err - 0.02).abs() < 5e-3);
    }

    #[test]
    fn no_stop_reproduces_gap_table() {
        let d = toy();
        let r = select_with_mode(
            &d,
            oracle_algorithm(&d),
            &EarlyStopConfig::new(0.05, 0.0, 5),
            StopMode::NoStop,
        )
        .unwrap();
        assert!(!r.stopped_early);
        let pct: Vec<i64> = r
            .per_k
            .iter()
            .map(|s| libm::round(s.worst_case_rel_err * 100.0) as i64)
            .collect();
        assert_eq!(pct, [2, 33, 60, 100]);
        assert_eq!(r.best_k, 2);
    }

    #[test]
    fn gate_blocks_all_calls() {
        let d = toy();
        let mut calls = 0;
        let r = select(
            &d,
            |k| {
                calls += 1;
                Ok::<_, Infallible>(Clustering::singletons(k))
            },
            &EarlyStopConfig::new(0.05, 0.9, 5),
        )
        .unwrap();
        assert_eq!(r.outcome, Outcome::NotClusterable);
        assert!(r.best.is_none());
        assert!(r.evaluated_ks.is_empty());
        assert_eq!(calls, 0);
    }

    #[test]
    fn failures_carry_k() {
        let d = toy();
        let r = select(
            &d,
            |k| if k == 3 { Err("boom") } else { Ok(Clustering::singletons(5)) },
            &EarlyStopConfig::new(0.0, 0.0, 4),
        );
        assert!(matches!(r, Err(SelectionError::WrongClusterCount { k: 2, got: 5 })));

        let mut algo = oracle_algorithm(&d);
        let r = select(
            &d,
            |k| if k == 3 { Err("boom") } else { Ok(algo(k).unwrap()) },
            &EarlyStopConfig::new(0.0, 0.0, 4),
        );
        match r {
            Err(SelectionError::AlgorithmFailure { k, error }) => {
                assert_eq!(k, 3);
                assert_eq!(error, "boom");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn config_checks() {
        let d = toy();
        for cfg in [
            EarlyStopConfig::new(1.5, 0.0, 3),
            EarlyStopConfig::new(0.1, -0.1, 3),
            EarlyStopConfig::new(0.1, 0.0, 1),
            EarlyStopConfig::new(0.1, 0.0, 6),
        ] {
            assert!(matches!(
                select(&d, oracle_algorithm(&d), &cfg),
                Err(SelectionError::InvalidConfig(_))
            ));
        }
        assert!(matches!(
            select(&d, oracle_algorithm(&d), &EarlyStopConfig::new(0.1, 0.0, 3).with_kappa(3)),
            Err(SelectionError::Bound(BoundError::KappaOutOfRange { .. }))
        ));
    }
}
