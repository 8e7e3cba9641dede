//! Documents and JSON-Lines dataset loading.

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::DataError;
use crate::util::atomic_write;

/// One classification unit: an id, the text to be examined, and an optional
/// binary label (absent at pure inference time).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<u8>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>, label: Option<u8>) -> Self {
        Document {
            id: id.into(),
            text: text.into(),
            label,
        }
    }
}

/// Load a dataset from JSON-Lines: one `{"id", "text", "label"}` object per
/// line. Ids must be unique, text non-empty, labels binary when present.
pub fn load_dataset(path: &Path) -> Result<Vec<Document>, DataError> {
    let text = std::fs::read_to_string(path).map_err(|e| DataError::io(path, e))?;
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let raw: serde_json::Value = serde_json::from_str(line)
            .map_err(|e| DataError::parse(path, lineno + 1, e.to_string()))?;
        let label = match raw.get("label") {
            None | Some(serde_json::Value::Null) => None,
            Some(v) => {
                let n = v.as_i64().ok_or_else(|| {
                    DataError::parse(path, lineno + 1, "label must be an integer")
                })?;
                Some(n)
            }
        };
        let doc: Document = serde_json::from_value(serde_json::json!({
            "id": raw.get("id").cloned().unwrap_or(serde_json::Value::Null),
            "text": raw.get("text").cloned().unwrap_or(serde_json::Value::Null),
        }))
        .map_err(|e| DataError::parse(path, lineno + 1, e.to_string()))?;
        let doc = Document {
            label: match label {
                None => None,
                Some(l @ (0 | 1)) => Some(l as u8),
                Some(other) => {
                    return Err(DataError::InvalidLabel {
                        doc_id: doc.id,
                        label: other,
                    })
                }
            },
            ..doc
        };
        if doc.text.is_empty() {
            return Err(DataError::EmptyDocument(doc.id));
        }
        if !seen.insert(doc.id.clone()) {
            return Err(DataError::DuplicateDocId(doc.id));
        }
        docs.push(doc);
    }
    Ok(docs)
}

/// Write a dataset as JSON-Lines (atomic).
pub fn save_dataset(path: &Path, docs: &[Document]) -> Result<(), DataError> {
    let mut out = String::new();
    for doc in docs {
        out.push_str(&serde_json::to_string(doc).expect("document serializes"));
        out.push('\n');
    }
    atomic_write(path, out.as_bytes()).map_err(|e| DataError::io(path, e))
}
