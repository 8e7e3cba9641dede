//! Question sets: one primary yes/no question plus n secondary questions.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::DataError;
use crate::util::atomic_write;

/// The ordered set of questions for one task.
///
/// Index 0 is the primary question; indices 1..=n are the secondary
/// questions. The ordering is load-bearing: feature column `i` always refers
/// to the answer to question `i`, from collection through training to
/// inference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionSet {
    pub task: String,
    pub primary: String,
    pub secondary: Vec<String>,
}

impl QuestionSet {
    pub fn new(
        task: impl Into<String>,
        primary: impl Into<String>,
        secondary: Vec<String>,
    ) -> Result<Self, DataError> {
        let set = QuestionSet {
            task: task.into(),
            primary: primary.into(),
            secondary,
        };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<(), DataError> {
        if self.task.trim().is_empty() {
            return Err(DataError::EmptyTaskName);
        }
        if self.primary.trim().is_empty() {
            return Err(DataError::EmptyQuestion(0));
        }
        for (i, q) in self.secondary.iter().enumerate() {
            if q.trim().is_empty() {
                return Err(DataError::EmptyQuestion(i + 1));
            }
        }
        Ok(())
    }

    /// Total question count, n + 1.
    pub fn len(&self) -> usize {
        self.secondary.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false // a valid set always has the primary question
    }

    /// Question text by index; 0 is the primary.
    pub fn question(&self, index: usize) -> Option<&str> {
        if index == 0 {
            Some(&self.primary)
        } else {
            self.secondary.get(index - 1).map(String::as_str)
        }
    }

    /// All questions in index order.
    pub fn iter(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.primary.as_str()).chain(self.secondary.iter().map(String::as_str))
    }

    pub fn load(path: &Path) -> Result<Self, DataError> {
        let text = std::fs::read_to_string(path).map_err(|e| DataError::io(path, e))?;
        let set: QuestionSet =
            serde_json::from_str(&text).map_err(|e| DataError::parse(path, 0, e.to_string()))?;
        set.validate()?;
        Ok(set)
    }

    pub fn save(&self, path: &Path) -> Result<(), DataError> {
        let mut text = serde_json::to_string_pretty(self).expect("question set serializes");
        text.push('\n');
        atomic_write(path, text.as_bytes()).map_err(|e| DataError::io(path, e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indexing_is_stable() {
        let qs = QuestionSet::new("demo", "Q0?", vec!["Q1?".into(), "Q2?".into()]).unwrap();
        assert_eq!(qs.len(), 3);
        assert_eq!(qs.question(0), Some("Q0?"));
        assert_eq!(qs.question(2), Some("Q2?"));
        assert_eq!(qs.question(3), None);
        let all: Vec<&str> = qs.iter().collect();
        assert_eq!(all, vec!["Q0?", "Q1?", "Q2?"]);
    }

    #[test]
    fn zero_secondary_questions_is_valid() {
        let qs = QuestionSet::new("demo", "Q0?", vec![]).unwrap();
        assert_eq!(qs.len(), 1);
    }

    #[test]
    fn blank_question_rejected() {
        assert!(QuestionSet::new("demo", "  ", vec![]).is_err());
        assert!(QuestionSet::new("demo", "Q0?", vec!["   ".into()]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q.json");
        let qs = QuestionSet::new("demo", "Q0?", vec!["Q1?".into()]).unwrap();
        qs.save(&path).unwrap();
        assert_eq!(QuestionSet::load(&path).unwrap(), qs);
        // file schema is {"task", "primary", "secondary"}
        let v: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(v.get("task").is_some() && v.get("primary").is_some() && v.get("secondary").is_some());
    }
}
