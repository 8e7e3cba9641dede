//! Error types shared by the domain modules.

use thiserror::Error;

/// Errors from question-set, dataset, and feature-vector handling.
#[derive(Debug, Error)]
pub enum DataError {
    #[error("question text at index {0} is empty after trimming")]
    EmptyQuestion(usize),
    #[error("task name is empty")]
    EmptyTaskName,
    #[error("document `{0}` has empty text")]
    EmptyDocument(String),
    #[error("duplicate document id `{0}` in dataset")]
    DuplicateDocId(String),
    #[error("document `{doc_id}` has invalid label {label}; labels must be 0 or 1")]
    InvalidLabel { doc_id: String, label: i64 },
    #[error("missing answer for question index {0}")]
    MissingAnswer(usize),
    #[error("duplicate answer for question index {0}")]
    DuplicateAnswer(usize),
    #[error("answer records mix documents `{expected}` and `{found}`")]
    MixedDocIds { expected: String, found: String },
    #[error("answer index {index} out of range for {dim} questions")]
    AnswerIndexOutOfRange { index: usize, dim: usize },
    #[error("feature value {value} at column {column} is not one of 0, 0.5, 1")]
    InvalidFeatureValue { column: usize, value: f64 },
    #[error("feature vector for `{doc_id}` has {found} values, expected {expected}")]
    DimensionMismatch {
        doc_id: String,
        expected: usize,
        found: usize,
    },
    #[error("feature set has {vectors} vectors but {labels} labels")]
    LabelCountMismatch { vectors: usize, labels: usize },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },
}

impl DataError {
    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        DataError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn parse(path: &std::path::Path, line: usize, message: impl Into<String>) -> Self {
        DataError::Parse {
            path: path.display().to_string(),
            line,
            message: message.into(),
        }
    }
}
