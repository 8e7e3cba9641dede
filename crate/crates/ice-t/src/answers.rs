//! Three-valued answers and their numeric verbalization.
//!
//! Every LLM reply is coerced into one of `Yes`, `No`, or `Unknown` and then
//! mapped onto a number: Yes → 1.0, No → 0.0, Unknown → 0.5. The coercion is
//! deliberately a leading-token rule, not a substring search, so a reply like
//! "no evidence suggests yes" reads as `No`.

use serde::{Deserialize, Serialize};

/// The three-valued verdict extracted from a raw LLM reply.
///
/// No other state is representable; anything that is not an affirmative or a
/// negative (refusals, hedges, noise, empty output) collapses to `Unknown`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AnswerValue {
    Yes,
    No,
    Unknown,
}

impl AnswerValue {
    /// Numeric encoding used in feature vectors.
    pub fn verbalize(self) -> f64 {
        match self {
            AnswerValue::Yes => 1.0,
            AnswerValue::No => 0.0,
            AnswerValue::Unknown => 0.5,
        }
    }
}

impl std::fmt::Display for AnswerValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AnswerValue::Yes => write!(f, "Yes"),
            AnswerValue::No => write!(f, "No"),
            AnswerValue::Unknown => write!(f, "Unknown"),
        }
    }
}

/// One answer to one question for one document, with the verbatim model
/// output kept for auditing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnswerRecord {
    pub doc_id: String,
    pub question_index: usize,
    /// Raw LLM output, byte-exact.
    pub raw_text: String,
    pub value: AnswerValue,
    /// Always `value.verbalize()`; stored so audit files are self-contained.
    pub numeric: f64,
}

impl AnswerRecord {
    pub fn new(doc_id: impl Into<String>, question_index: usize, raw_text: impl Into<String>) -> Self {
        let raw_text = raw_text.into();
        let value = parse_answer_text(&raw_text);
        AnswerRecord {
            doc_id: doc_id.into(),
            question_index,
            raw_text,
            value,
            numeric: value.verbalize(),
        }
    }
}

/// Coerce free-form LLM output into a three-valued answer.
///
/// The first alphanumeric token (after skipping whitespace, punctuation, and
/// markup characters) decides: `yes` → Yes, `no` → No, case-insensitive.
/// Everything else — including explicit "unknown", refusals, other languages,
/// and the empty string — is `Unknown`. Total function, never fails.
pub fn parse_answer_text(raw: &str) -> AnswerValue {
    let token: String = raw
        .chars()
        .skip_while(|c| !c.is_alphanumeric())
        .take_while(|c| c.is_alphanumeric())
        .flat_map(|c| c.to_lowercase())
        .collect();
    match token.as_str() {
        "yes" => AnswerValue::Yes,
        "no" => AnswerValue::No,
        _ => AnswerValue::Unknown,
    }
}
