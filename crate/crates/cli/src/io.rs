//! CSV ingestion and output plumbing.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use silhouette_ub::{build_matrix, validate_matrix, Clustering, DissimilarityMatrix, Metric, PointSet};

use crate::error::CliError;

fn open(path: &Path) -> Result<csv::Reader<File>, CliError> {
    let file = File::open(path).map_err(|e| CliError::io(path, e))?;
    Ok(csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(file))
}

fn csv_error(path: &Path, e: csv::Error) -> CliError {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::io(path, io),
            _ => unreachable!(),
        }
    } else {
        CliError::invalid("MalformedCsv", format!("{}: {e}", path.display()))
    }
}

/// Reads a numeric CSV. A first line that does not parse as numbers is
/// taken to be a header and skipped.
pub fn read_numeric_rows(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let mut rows = Vec::new();
    for (r, record) in open(path)?.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let parsed: Result<Vec<f64>, usize> = record
            .iter()
            .enumerate()
            .map(|(c, field)| field.parse::<f64>().map_err(|_| c))
            .collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if r == 0 => continue,
            Err(c) => {
                return Err(CliError::invalid(
                    "ParseError",
                    format!(
                        "{}: line {}, column {}: {:?} is not a number",
                        path.display(),
                        r + 1,
                        c + 1,
                        &record[c]
                    ),
                ))
            }
        }
    }
    Ok(rows)
}

pub fn read_points(path: &Path) -> Result<PointSet, CliError> {
    let rows = read_numeric_rows(path)?;
    Ok(PointSet::from_rows(&rows)?)
}

pub fn read_matrix(path: &Path) -> Result<DissimilarityMatrix, CliError> {
    let rows = read_numeric_rows(path)?;
    Ok(validate_matrix(&rows)?)
}

/// The dissimilarity matrix plus, for point input, the points themselves.
pub struct Loaded {
    pub delta: DissimilarityMatrix,
    pub points: Option<PointSet>,
}

pub fn load(path: &Path, as_matrix: bool, metric: Metric) -> Result<Loaded, CliError> {
    if as_matrix {
        return Ok(Loaded {
            delta: read_matrix(path)?,
            points: None,
        });
    }
    let points = read_points(path)?;
    Ok(Loaded {
        delta: build_matrix(&points, metric)?,
        points: Some(points),
    })
}

/// One label per line (first column); ids may be arbitrary strings and are
/// renumbered by first appearance. A first line reading `label` is a header.
pub fn read_labels(path: &Path) -> Result<Clustering, CliError> {
    let mut ids = Vec::new();
    for (r, record) in open(path)?.records().enumerate() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let id = record.get(0).unwrap_or("").to_owned();
        if r == 0 && id.eq_ignore_ascii_case("label") {
            continue;
        }
        if id.is_empty() {
            return Err(CliError::invalid(
                "ParseError",
                format!("{}: line {}: empty label", path.display(), r + 1),
            ));
        }
        ids.push(id);
    }
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    Ok(Clustering::from_ids(&refs)?)
}

/// Points CSV with an `x1,…,xm` header; values at full round-trip precision.
pub fn points_csv(points: &PointSet) -> String {
    let mut out = String::new();
    let header: Vec<String> = (1..=points.dim()).map(|f| format!("x{f}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for i in 0..points.n() {
        let row: Vec<String> = points.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Labels CSV, 1-based.
pub fn labels_csv(labels: &[usize]) -> String {
    let mut out = String::from("label\n");
    for l in labels {
        out.push_str(&(l + 1).to_string());
        out.push('\n');
    }
    out
}

pub fn write_to(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f = File::create(p).map_err(|e| CliError::io(p, e))?;
            f.write_all(content.as_bytes()).map_err(|e| CliError::io(p, e))
        }
        None => io::stdout()
            .write_all(content.as_bytes())
            .map_err(|e| CliError::io(Path::new("<stdout>"), e)),
    }
}

