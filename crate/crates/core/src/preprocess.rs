//! Dataset ingestion and the input transforms every model relies on:
//! min-max scaling into the unit hypercube, complement coding and a
//! seeded presentation order.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use rand::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::ArtError;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("line {line}, column {column}: cannot parse {cell:?} as a finite number")]
    BadCell { line: usize, column: String, cell: String },
    #[error("line {line} has {actual} fields, header has {expected}")]
    Ragged {
        line: usize,
        expected: usize,
        actual: usize,
    },
    #[error("label column {0:?} not found in header")]
    UnknownLabelColumn(String),
    #[error("file has no feature columns")]
    NoFeatures,
    #[error("file has no data rows")]
    NoRows,
    #[error("ranges cover {expected} features, data has {actual}")]
    RangeMismatch { expected: usize, actual: usize },
}

/// Rectangular sample matrix with optional integer class labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub feature_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Option<Vec<usize>>,
    /// `label_names[id]` is the original string for class `id`.
    pub label_names: Vec<String>,
}

impl Dataset {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let d = rows.first().map_or(0, Vec::len);
        Dataset {
            feature_names: (0..d).map(|i| format!("x{i}")).collect(),
            rows,
            labels: None,
            label_names: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.feature_names.len()
    }
}

/// Per-feature `(min, max)` pairs learned from training data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormalizationRanges {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl NormalizationRanges {
    pub fn dim(&self) -> usize {
        self.min.len()
    }

    fn scale(&self, i: usize, v: f64) -> f64 {
        let (lo, hi) = (self.min[i], self.max[i]);
        if hi > lo {
            ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
        } else {
            0.5
        }
    }
}

/// Reads a headed CSV file. When `label_column` is given that column is
/// removed from the features and mapped to dense ids in first-appearance
/// order.
pub fn load_csv(path: impl AsRef<Path>, label_column: Option<&str>) -> Result<Dataset, DataError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| DataError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_csv(file, label_column)
}

pub fn read_csv<R: std::io::Read>(reader: R, label_column: Option<&str>) -> Result<Dataset, DataError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_owned).collect();
    let label_idx = match label_column {
        Some(name) => Some(
            header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| DataError::UnknownLabelColumn(name.to_owned()))?,
        ),
        None => None,
    };
    let feature_names: Vec<String> = header
        .iter()
        .enumerate()
        .filter(|(i, _)| Some(*i) != label_idx)
        .map(|(_, h)| h.clone())
        .collect();
    if feature_names.is_empty() {
        return Err(DataError::NoFeatures);
    }

    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut label_ids: HashMap<String, usize> = HashMap::new();
    let mut label_names = Vec::new();
    for (n, record) in rdr.records().enumerate() {
        let record = record?;
        // header is line 1
        let line = n + 2;
        if record.len() != header.len() {
            return Err(DataError::Ragged {
                line,
                expected: header.len(),
                actual: record.len(),
            });
        }
        let mut row = Vec::with_capacity(feature_names.len());
        for (i, cell) in record.iter().enumerate() {
            if Some(i) == label_idx {
                let next = label_names.len();
                let id = *label_ids.entry(cell.to_owned()).or_insert_with(|| {
                    label_names.push(cell.to_owned());
                    next
                });
                labels.push(id);
                continue;
            }
            let value: f64 = cell
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| DataError::BadCell {
                    line,
                    column: header[i].clone(),
                    cell: cell.to_owned(),
                })?;
            row.push(value);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(DataError::NoRows);
    }
    Ok(Dataset {
        feature_names,
        rows,
        labels: label_idx.map(|_| labels),
        label_names,
    })
}

/// Learns min-max ranges from `data` and rescales it into `[0, 1]`.
/// Constant features map to 0.5.
pub fn normalize_fit_apply(data: &Dataset) -> Result<(Dataset, NormalizationRanges), DataError> {
    let d = data.dim();
    if data.rows.is_empty() {
        return Err(DataError::NoRows);
    }
    let mut min = vec![f64::INFINITY; d];
    let mut max = vec![f64::NEG_INFINITY; d];
    for row in &data.rows {
        for (i, &v) in row.iter().enumerate() {
            min[i] = min[i].min(v);
            max[i] = max[i].max(v);
        }
    }
    let ranges = NormalizationRanges { min, max };
    let scaled = normalize_apply(&ranges, data)?;
    Ok((scaled, ranges))
}

/// Rescales with stored ranges, clamping anything outside into `[0, 1]`.
pub fn normalize_apply(ranges: &NormalizationRanges, data: &Dataset) -> Result<Dataset, DataError> {
    if data.dim() != ranges.dim() {
        return Err(DataError::RangeMismatch {
            expected: ranges.dim(),
            actual: data.dim(),
        });
    }
    let rows = data
        .rows
        .iter()
        .map(|row| row.iter().enumerate().map(|(i, &v)| ranges.scale(i, v)).collect())
        .collect();
    Ok(Dataset { rows, ..data.clone() })
}

/// `[x, 1 - x]`. The output always has L1 norm equal to `x.len()`.
pub fn complement_code(x: &[f64]) -> Result<Vec<f64>, ArtError> {
    let mut out = Vec::with_capacity(2 * x.len());
    complement_code_into(x, &mut out)?;
    Ok(out)
}

pub(crate) fn complement_code_into(x: &[f64], out: &mut Vec<f64>) -> Result<(), ArtError> {
    for (index, &value) in x.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            return Err(ArtError::OutOfUnitRange { index, value });
        }
    }
    out.clear();
    out.extend_from_slice(x);
    out.extend(x.iter().map(|v| 1.0 - v));
    Ok(())
}

/// Seeded permutation of `0..n`.
///
/// SplitMix64 starts from state `seed`. Fisher-Yates then walks `i` from
/// `n - 1` down to 1 and swaps `i` with `j = (r * (i + 1)) >> 64`, where `r`
/// is the next 64-bit output. The index draw is spelled out here rather than
/// left to a library so permutations stay fixed across dependency upgrades.
pub fn shuffle_seeded(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = SplitMix64::seed_from_u64(seed);
    for i in (1..n).rev() {
        let j = ((u128::from(rng.next_u64()) * (i as u128 + 1)) >> 64) as usize;
        order.swap(i, j);
    }
    order
}
