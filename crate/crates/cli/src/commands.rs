use std::path::{Path, PathBuf};

use rayon::prelude::*;
use silhouette_ub::baselines::{make_blobs, BlobSpec};
use silhouette_ub::bounds::{check_kappa, pointwise_bound, BoundReport, PointBound};
use silhouette_ub::matrix::{sort_row, SortedDissimilarity};
use silhouette_ub::oracle::{optimal_asw, PartitionConstraints};
use silhouette_ub::selection::{select_with_mode, EarlyStopConfig, Outcome, StopMode};
use silhouette_ub::{asw, silhouette_report, DissimilarityMatrix, Metric};

use crate::algorithms::{AlgorithmName, Prepared};
use crate::error::CliError;
use crate::io::{labels_csv, load, points_csv, read_labels, write_to};
use crate::{report, Format};

pub struct Input {
    pub path: PathBuf,
    pub as_matrix: bool,
    pub metric: Metric,
}

pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Format,
}

impl Output {
    fn emit(&self, json: impl FnOnce() -> String, csv: impl FnOnce() -> String) -> Result<(), CliError> {
        let body = match self.format {
            Format::Json => json(),
            Format::Csv => csv(),
        };
        write_to(self.path.as_deref(), &body)
    }
}

/// Row sorting and the per-point scans run on the rayon pool; the result is
/// identical to the sequential `bound_report`.
pub fn parallel_bound_report(delta: &DissimilarityMatrix, kappa: usize) -> Result<BoundReport, CliError> {
    let n = delta.n();
    check_kappa(n, kappa)?;
    let rows: Vec<Vec<f64>> = (0..n).into_par_iter().map(|i| sort_row(delta, i)).collect();
    let sorted = SortedDissimilarity::from_sorted_rows(n, rows)?;
    let points = (0..n)
        .into_par_iter()
        .map(|i| pointwise_bound(&sorted, i, kappa))
        .collect::<Result<Vec<PointBound>, _>>()?;
    Ok(BoundReport::from_points(kappa, &points))
}

pub fn bound(input: &Input, kappa: usize, output: &Output) -> Result<(), CliError> {
    let loaded = load(&input.path, input.as_matrix, input.metric)?;
    let r = parallel_bound_report(&loaded.delta, kappa)?;
    println!("{}", report::bound_summary(&r));
    output.emit(|| report::bound_json(&r), || report::bound_csv(&r))
}

pub fn silhouette(input: &Input, labels: &Path, output: &Output) -> Result<(), CliError> {
    let loaded = load(&input.path, input.as_matrix, input.metric)?;
    let clustering = read_labels(labels)?;
    let r = silhouette_report(&loaded.delta, &clustering)?;
    output.emit(
        || report::silhouette_json(clustering.labels(), clustering.k(), &r),
        || report::silhouette_csv(clustering.labels(), &r),
    )
}

pub fn optimal(
    input: &Input,
    ks: Option<(usize, usize)>,
    kappa: usize,
    labels_output: Option<&Path>,
    output: &Output,
) -> Result<(), CliError> {
    let loaded = load(&input.path, input.as_matrix, input.metric)?;
    let n = loaded.delta.n();
    let (lo, hi) = ks.unwrap_or((2, n));
    let constraints = PartitionConstraints::nontrivial()
        .with_k_range(lo, hi)
        .with_min_size(kappa);
    let r = optimal_asw(&loaded.delta, constraints)?;
    if let Some(p) = labels_output {
        write_to(Some(p), &labels_csv(r.best.labels()))?;
    }
    output.emit(
        || report::optimal_json(r.best.labels(), r.best.k(), r.best_asw, r.ties, r.evaluated),
        || report::labels_table_csv(r.best.labels()),
    )
}

pub fn sweep(
    input: &Input,
    (lo, hi): (usize, usize),
    algorithms: &[AlgorithmName],
    seed: u64,
    kappa: usize,
    output: &Output,
) -> Result<(), CliError> {
    let loaded = load(&input.path, input.as_matrix, input.metric)?;
    let delta = &loaded.delta;
    let n = delta.n();
    if lo < 2 || hi > n {
        return Err(CliError::invalid(
            "InvalidConfig",
            format!("K range {lo}:{hi} must lie within 2:{n}"),
        ));
    }
    let ub = parallel_bound_report(delta, 1)?.ub;
    let ub_kappa = if kappa == 1 {
        ub
    } else {
        parallel_bound_report(delta, kappa)?.ub
    };
    let mut rows = Vec::new();
    for &name in algorithms {
        let prepared = Prepared::new(name, delta, loaded.points.as_ref(), input.metric, seed, 1)?;
        let scores = (lo..=hi)
            .into_par_iter()
            .map(|k| {
                let c = prepared.cluster(delta, k)?;
                Ok(report::SweepRow {
                    algorithm: name.name(),
                    k,
                    asw: asw(delta, &c)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        rows.extend(scores);
    }
    output.emit(
        || report::sweep_json(&rows, ub, ub_kappa, kappa),
        || report::sweep_csv(&rows, ub, ub_kappa),
    )
}

pub struct SelectArgs {
    pub algorithm: AlgorithmName,
    pub seed: u64,
    pub epsilon: f64,
    pub tau: f64,
    pub k_max: usize,
    pub kappa: Option<usize>,
    pub no_stop: bool,
}

pub fn select(
    input: &Input,
    args: &SelectArgs,
    labels_output: Option<&Path>,
    output: &Output,
) -> Result<(), CliError> {
    let loaded = load(&input.path, input.as_matrix, input.metric)?;
    let delta = &loaded.delta;
    let min_size = args.kappa.unwrap_or(1);
    let prepared = Prepared::new(args.algorithm, delta, loaded.points.as_ref(), input.metric, args.seed, min_size)?;
    let mut config = EarlyStopConfig::new(args.epsilon, args.tau, args.k_max);
    if let Some(kappa) = args.kappa {
        config = config.with_kappa(kappa);
    }
    let mode = if args.no_stop {
        StopMode::NoStop
    } else {
        StopMode::EarlyStop
    };
    let r = select_with_mode(delta, |k| prepared.cluster(delta, k), &config, mode)?;
    if let (Some(p), Some(best)) = (labels_output, r.best.as_ref()) {
        write_to(Some(p), &labels_csv(best.labels()))?;
    }
    output.emit(
        || report::select_json(&r, args.algorithm.name()),
        || report::select_csv(&r),
    )?;
    match r.outcome {
        Outcome::Selected => Ok(()),
        Outcome::NotClusterable => Err(CliError::NotClusterable { ub: r.ub, tau: r.tau }),
    }
}

pub fn gen(tag: &str, seed: u64, output: &Path, labels_output: Option<&Path>) -> Result<(), CliError> {
    let spec: BlobSpec = tag.parse().map_err(|e| CliError::invalid("InvalidTag", e))?;
    let blobs = make_blobs(&spec, seed)?;
    write_to(Some(output), &points_csv(&blobs.points))?;
    if let Some(p) = labels_output {
        write_to(Some(p), &labels_csv(&blobs.labels))?;
    }
    println!("{spec}");
    Ok(())
}
