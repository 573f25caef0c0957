//! Output documents. JSON keeps full precision; CSV rounds to 6 decimals.

use serde::Serialize;
use silhouette_ub::selection::{KScore, Outcome, SelectionResult};
use silhouette_ub::{BoundReport, SilhouetteReport};

fn one_based(labels: &[usize]) -> Vec<usize> {
    labels.iter().map(|l| l + 1).collect()
}

fn f6(x: f64) -> String {
    format!("{x:.6}")
}

fn csv_document(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 csv")
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct BoundJson<'a> {
    n: usize,
    kappa: usize,
    ub: f64,
    min_ub: f64,
    max_ub: f64,
    bounds: &'a [f64],
    lambda_star: &'a [usize],
}

pub fn bound_summary(r: &BoundReport) -> String {
    format!(
        "UB={:.6} minUB={:.6} maxUB={:.6} kappa={}",
        r.ub, r.min_ub, r.max_ub, r.kappa
    )
}

pub fn bound_json(r: &BoundReport) -> String {
    json_line(&BoundJson {
        n: r.n(),
        kappa: r.kappa,
        ub: r.ub,
        min_ub: r.min_ub,
        max_ub: r.max_ub,
        bounds: &r.bounds,
        lambda_star: &r.lambda_star,
    })
}

pub fn bound_csv(r: &BoundReport) -> String {
    csv_document(
        &["point", "bound", "lambda_star"],
        (0..r.n()).map(|i| vec![(i + 1).to_string(), f6(r.bounds[i]), r.lambda_star[i].to_string()]),
    )
}

#[derive(Serialize)]
struct SilhouetteJson<'a> {
    k: usize,
    asw: f64,
    labels: Vec<usize>,
    a: &'a [Option<f64>],
    b: &'a [f64],
    s: &'a [f64],
}

pub fn silhouette_json(labels: &[usize], k: usize, r: &SilhouetteReport) -> String {
    json_line(&SilhouetteJson {
        k,
        asw: r.asw,
        labels: one_based(labels),
        a: &r.a,
        b: &r.b,
        s: &r.s,
    })
}

pub fn silhouette_csv(labels: &[usize], r: &SilhouetteReport) -> String {
    csv_document(
        &["point", "label", "a", "b", "s"],
        (0..labels.len()).map(|i| {
            vec![
                (i + 1).to_string(),
                (labels[i] + 1).to_string(),
                r.a[i].map(f6).unwrap_or_default(),
                f6(r.b[i]),
                f6(r.s[i]),
            ]
        }),
    )
}

#[derive(Serialize)]
struct OptimalJson {
    k: usize,
    best_asw: f64,
    best_labels: Vec<usize>,
    ties: u64,
    evaluated: u64,
}

pub fn optimal_json(labels: &[usize], k: usize, best_asw: f64, ties: u64, evaluated: u64) -> String {
    json_line(&OptimalJson {
        k,
        best_asw,
        best_labels: one_based(labels),
        ties,
        evaluated,
    })
}

pub fn labels_table_csv(labels: &[usize]) -> String {
    csv_document(
        &["point", "label"],
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| vec![(i + 1).to_string(), (l + 1).to_string()]),
    )
}

pub struct SweepRow {
    pub algorithm: &'static str,
    pub k: usize,
    pub asw: f64,
}

#[derive(Serialize)]
struct SweepRowJson {
    algorithm: &'static str,
    k: usize,
    asw: f64,
}

#[derive(Serialize)]
struct SweepJson {
    kappa: usize,
    ub: f64,
    ub_kappa: f64,
    rows: Vec<SweepRowJson>,
}

pub fn sweep_json(rows: &[SweepRow], ub: f64, ub_kappa: f64, kappa: usize) -> String {
    json_line(&SweepJson {
        kappa,
        ub,
        ub_kappa,
        rows: rows
            .iter()
            .map(|r| SweepRowJson {
                algorithm: r.algorithm,
                k: r.k,
                asw: r.asw,
            })
            .collect(),
    })
}

pub fn sweep_csv(rows: &[SweepRow], ub: f64, ub_kappa: f64) -> String {
    csv_document(
        &["algorithm", "k", "asw", "ub", "ub_kappa"],
        rows.iter()
            .map(|r| vec![r.algorithm.to_owned(), r.k.to_string(), f6(r.asw), f6(ub), f6(ub_kappa)]),
    )
}

#[derive(Serialize)]
struct KScoreJson {
    k: usize,
    asw: f64,
    worst_case_rel_err: f64,
}

#[derive(Serialize)]
struct SelectJson {
    outcome: &'static str,
    algorithm: &'static str,
    best_k: Option<usize>,
    best_asw: Option<f64>,
    ub: f64,
    tau: f64,
    kappa: usize,
    worst_case_rel_err: Option<f64>,
    stopped_early: bool,
    evaluated_ks: Vec<usize>,
    labels: Option<Vec<usize>>,
    per_k: Vec<KScoreJson>,
}

pub fn select_json(r: &SelectionResult, algorithm: &'static str) -> String {
    let selected = r.outcome == Outcome::Selected;
    json_line(&SelectJson {
        outcome: r.outcome.name(),
        algorithm,
        best_k: selected.then_some(r.best_k),
        best_asw: selected.then_some(r.best_asw),
        ub: r.ub,
        tau: r.tau,
        kappa: r.kappa,
        worst_case_rel_err: selected.then_some(r.worst_case_rel_err),
        stopped_early: r.stopped_early,
        evaluated_ks: r.evaluated_ks.clone(),
        labels: r.best.as_ref().map(|c| one_based(c.labels())),
        per_k: r
            .per_k
            .iter()
            .map(|&KScore { k, asw, worst_case_rel_err }| KScoreJson {
                k,
                asw,
                worst_case_rel_err,
            })
            .collect(),
    })
}

pub fn select_csv(r: &SelectionResult) -> String {
    csv_document(
        &["k", "asw", "ub", "worst_case_rel_err"],
        r.per_k
            .iter()
            .map(|s| vec![s.k.to_string(), f6(s.asw), f6(r.ub), f6(s.worst_case_rel_err)]),
    )
}
