//! Feature vectors assembled from verbalized answers, and the labeled sets
//! used for training and evaluation.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::answers::AnswerRecord;
use crate::error::DataError;
use crate::util::{atomic_write, fmt_feature};

/// Ordered numeric answers for one document; `values[i]` is the verbalized
/// answer to question `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub doc_id: String,
    pub values: Vec<f64>,
}

/// Feature vectors plus position-aligned binary labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledFeatureSet {
    pub vectors: Vec<FeatureVector>,
    pub labels: Vec<u8>,
}

fn is_ternary(v: f64) -> bool {
    v == 0.0 || v == 0.5 || v == 1.0
}

impl FeatureVector {
    pub fn new(doc_id: impl Into<String>, values: Vec<f64>) -> Result<Self, DataError> {
        let doc_id = doc_id.into();
        for (i, &v) in values.iter().enumerate() {
            if !is_ternary(v) {
                return Err(DataError::InvalidFeatureValue { column: i, value: v });
            }
        }
        Ok(FeatureVector { doc_id, values })
    }
}

impl LabeledFeatureSet {
    pub fn new(vectors: Vec<FeatureVector>, labels: Vec<u8>) -> Result<Self, DataError> {
        if vectors.len() != labels.len() {
            return Err(DataError::LabelCountMismatch {
                vectors: vectors.len(),
                labels: labels.len(),
            });
        }
        if let Some(first) = vectors.first() {
            let dim = first.values.len();
            for v in &vectors {
                if v.values.len() != dim {
                    return Err(DataError::DimensionMismatch {
                        doc_id: v.doc_id.clone(),
                        expected: dim,
                        found: v.values.len(),
                    });
                }
            }
        }
        for (v, &l) in vectors.iter().zip(&labels) {
            if l > 1 {
                return Err(DataError::InvalidLabel {
                    doc_id: v.doc_id.clone(),
                    label: l as i64,
                });
            }
        }
        Ok(LabeledFeatureSet { vectors, labels })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Feature dimensionality; 0 for an empty set.
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.values.len())
    }

    /// A new set containing only the given feature columns, in the given order.
    pub fn select_columns(&self, columns: &[usize]) -> LabeledFeatureSet {
        let vectors = self
            .vectors
            .iter()
            .map(|v| FeatureVector {
                doc_id: v.doc_id.clone(),
                values: columns.iter().map(|&c| v.values[c]).collect(),
            })
            .collect();
        LabeledFeatureSet {
            vectors,
            labels: self.labels.clone(),
        }
    }

    /// A new set containing only the given row indices, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> LabeledFeatureSet {
        LabeledFeatureSet {
            vectors: rows.iter().map(|&r| self.vectors[r].clone()).collect(),
            labels: rows.iter().map(|&r| self.labels[r]).collect(),
        }
    }
}

/// Order answer records by question index into a feature vector.
///
/// The records must all belong to one document and their indices must be a
/// permutation of `0..expected_dim`. Input order does not matter.
pub fn assemble_feature_vector(
    records: &[AnswerRecord],
    expected_dim: usize,
) -> Result<FeatureVector, DataError> {
    let doc_id = records
        .first()
        .map(|r| r.doc_id.clone())
        .unwrap_or_default();
    let mut slots: Vec<Option<f64>> = vec![None; expected_dim];
    for rec in records {
        if rec.doc_id != doc_id {
            return Err(DataError::MixedDocIds {
                expected: doc_id,
                found: rec.doc_id.clone(),
            });
        }
        if rec.question_index >= expected_dim {
            return Err(DataError::AnswerIndexOutOfRange {
                index: rec.question_index,
                dim: expected_dim,
            });
        }
        if slots[rec.question_index].is_some() {
            return Err(DataError::DuplicateAnswer(rec.question_index));
        }
        slots[rec.question_index] = Some(rec.numeric);
    }
    let mut values = Vec::with_capacity(expected_dim);
    for (i, slot) in slots.into_iter().enumerate() {
        values.push(slot.ok_or(DataError::MissingAnswer(i))?);
    }
    FeatureVector::new(doc_id, values)
}

/// A feature matrix as persisted to CSV: rows in file order, labels optional
/// per row (empty cell = unlabeled).
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    pub vectors: Vec<FeatureVector>,
    pub labels: Vec<Option<u8>>,
}

impl FeatureMatrix {
    pub fn dim(&self) -> usize {
        self.vectors.first().map_or(0, |v| v.values.len())
    }

    /// Split off the rows that carry labels into a training-ready set.
    pub fn labeled(&self) -> Result<LabeledFeatureSet, DataError> {
        let mut vectors = Vec::new();
        let mut labels = Vec::new();
        for (v, l) in self.vectors.iter().zip(&self.labels) {
            if let Some(l) = l {
                vectors.push(v.clone());
                labels.push(*l);
            }
        }
        LabeledFeatureSet::new(vectors, labels)
    }
}

/// Write the feature matrix CSV: header `doc_id,q0,...,qn,label`.
pub fn save_feature_matrix(path: &Path, matrix: &FeatureMatrix) -> Result<(), DataError> {
    let dim = matrix.dim();
    let mut buf = Vec::new();
    {
        let mut w = csv::Writer::from_writer(&mut buf);
        let mut header = vec!["doc_id".to_string()];
        header.extend((0..dim).map(|i| format!("q{i}")));
        header.push("label".to_string());
        w.write_record(&header).map_err(|e| csv_err(path, &e))?;
        for (v, label) in matrix.vectors.iter().zip(&matrix.labels) {
            let mut record = vec![v.doc_id.clone()];
            record.extend(v.values.iter().map(|&x| fmt_feature(x)));
            record.push(label.map(|l| l.to_string()).unwrap_or_default());
            w.write_record(&record).map_err(|e| csv_err(path, &e))?;
        }
        w.flush().map_err(|e| DataError::io(path, e))?;
    }
    atomic_write(path, &buf).map_err(|e| DataError::io(path, e))
}

/// Read a feature matrix CSV written by [`save_feature_matrix`].
pub fn load_feature_matrix(path: &Path) -> Result<FeatureMatrix, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .from_path(path)
        .map_err(|e| csv_err(path, &e))?;
    let headers = reader.headers().map_err(|e| csv_err(path, &e))?.clone();
    if headers.len() < 2 || &headers[0] != "doc_id" || &headers[headers.len() - 1] != "label" {
        return Err(DataError::parse(
            path,
            1,
            "expected header doc_id,q0,...,qn,label",
        ));
    }
    let dim = headers.len() - 2;
    for i in 0..dim {
        if headers[i + 1] != format!("q{i}") {
            return Err(DataError::parse(
                path,
                1,
                format!("expected column q{i}, found {}", &headers[i + 1]),
            ));
        }
    }
    let mut vectors = Vec::new();
    let mut labels = Vec::new();
    for (i, row) in reader.records().enumerate() {
        let row = row.map_err(|e| csv_err(path, &e))?;
        let lineno = i + 2;
        if row.len() != headers.len() {
            return Err(DataError::parse(path, lineno, "wrong number of columns"));
        }
        let mut values = Vec::with_capacity(dim);
        for c in 0..dim {
            let v: f64 = row[c + 1]
                .parse()
                .map_err(|_| DataError::parse(path, lineno, format!("bad value `{}`", &row[c + 1])))?;
            values.push(v);
        }
        let label_cell = &row[headers.len() - 1];
        let label = if label_cell.is_empty() {
            None
        } else {
            match label_cell.parse::<i64>() {
                Ok(l @ (0 | 1)) => Some(l as u8),
                Ok(l) => {
                    return Err(DataError::InvalidLabel {
                        doc_id: row[0].to_string(),
                        label: l,
                    })
                }
                Err(_) => return Err(DataError::parse(path, lineno, "bad label")),
            }
        };
        vectors.push(FeatureVector::new(row[0].to_string(), values)?);
        labels.push(label);
    }
    Ok(FeatureMatrix { vectors, labels })
}

fn csv_err(path: &Path, e: &csv::Error) -> DataError {
    DataError::parse(path, 0, e.to_string())
}
