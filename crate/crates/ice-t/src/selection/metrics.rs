//! Confusion counts and the F1 family: micro, macro, and support-weighted.
//!
//! Micro-averaging sums TP/FP/FN over both classes. For binary single-label
//! predictions that makes micro precision, micro recall, and micro F1 all
//! equal to plain accuracy; the test suite pins that identity down.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("y_true has {true_len} entries but y_pred has {pred_len}")]
    LengthMismatch { true_len: usize, pred_len: usize },
    #[error("label {0} is not binary (0/1)")]
    InvalidLabel(u8),
}

/// Per-class tallies over one evaluation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

/// Confusion counts for both classes of a binary problem.
///
/// By construction `class(0).tp == class(1).tn` and `class(0).fp == class(1).fn_`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionCounts {
    pub classes: [ClassCounts; 2],
}

impl ConfusionCounts {
    pub fn class(&self, label: u8) -> &ClassCounts {
        &self.classes[label as usize]
    }

    /// Number of evaluated instances.
    pub fn total(&self) -> usize {
        let c = &self.classes[0];
        c.tp + c.fp + c.fn_ + c.tn
    }

    /// True-instance count of a class.
    pub fn support(&self, label: u8) -> usize {
        let c = self.class(label);
        c.tp + c.fn_
    }
}

/// Tally exact integer confusion counts for both classes.
pub fn confusion_counts(y_true: &[u8], y_pred: &[u8]) -> Result<ConfusionCounts, MetricsError> {
    if y_true.len() != y_pred.len() {
        return Err(MetricsError::LengthMismatch {
            true_len: y_true.len(),
            pred_len: y_pred.len(),
        });
    }
    for &l in y_true.iter().chain(y_pred) {
        if l > 1 {
            return Err(MetricsError::InvalidLabel(l));
        }
    }
    let mut classes = [ClassCounts::default(); 2];
    for (&t, &p) in y_true.iter().zip(y_pred) {
        for c in 0..2u8 {
            let counts = &mut classes[c as usize];
            match (t == c, p == c) {
                (true, true) => counts.tp += 1,
                (false, true) => counts.fp += 1,
                (true, false) => counts.fn_ += 1,
                (false, false) => counts.tn += 1,
            }
        }
    }
    Ok(ConfusionCounts { classes })
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0 // 0/0 convention: degenerate denominators score 0
    } else {
        num as f64 / den as f64
    }
}

/// Micro precision: ΣTP / (ΣTP + ΣFP) over both classes.
pub fn micro_precision(counts: &ConfusionCounts) -> f64 {
    let tp: usize = counts.classes.iter().map(|c| c.tp).sum();
    let fp: usize = counts.classes.iter().map(|c| c.fp).sum();
    ratio(tp, tp + fp)
}

/// Micro recall: ΣTP / (ΣTP + ΣFN) over both classes.
pub fn micro_recall(counts: &ConfusionCounts) -> f64 {
    let tp: usize = counts.classes.iter().map(|c| c.tp).sum();
    let fn_: usize = counts.classes.iter().map(|c| c.fn_).sum();
    ratio(tp, tp + fn_)
}

/// Micro F1: harmonic mean of micro precision and micro recall.
pub fn micro_f1(counts: &ConfusionCounts) -> f64 {
    let p = micro_precision(counts);
    let r = micro_recall(counts);
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

/// Per-class F1: 2TP / (2TP + FP + FN), 0 when the denominator is 0.
pub fn class_f1(counts: &ConfusionCounts, label: u8) -> f64 {
    let c = counts.class(label);
    ratio(2 * c.tp, 2 * c.tp + c.fp + c.fn_)
}

/// Macro F1: unweighted mean of the two per-class F1 scores.
pub fn macro_f1(counts: &ConfusionCounts) -> f64 {
    (class_f1(counts, 0) + class_f1(counts, 1)) / 2.0
}

/// Weighted F1: per-class F1 weighted by class support.
pub fn weighted_f1(counts: &ConfusionCounts) -> f64 {
    let total = counts.support(0) + counts.support(1);
    if total == 0 {
        return 0.0;
    }
    (counts.support(0) as f64 * class_f1(counts, 0)
        + counts.support(1) as f64 * class_f1(counts, 1))
        / total as f64
}

/// The full metric bundle emitted by evaluations and selection reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub micro_precision: f64,
    pub micro_recall: f64,
    pub micro_f1: f64,
    pub macro_f1: f64,
    pub weighted_f1: f64,
    pub per_class_f1: [f64; 2],
    pub support: [usize; 2],
    /// True when some per-class denominator was 0 and the 0/0→0 convention fired.
    pub degenerate: bool,
}

impl MetricsReport {
    pub fn from_counts(counts: &ConfusionCounts) -> MetricsReport {
        let degenerate = (0..2u8).any(|c| {
            let cc = counts.class(c);
            2 * cc.tp + cc.fp + cc.fn_ == 0
        }) || counts.total() == 0;
        MetricsReport {
            micro_precision: micro_precision(counts),
            micro_recall: micro_recall(counts),
            micro_f1: micro_f1(counts),
            macro_f1: macro_f1(counts),
            weighted_f1: weighted_f1(counts),
            per_class_f1: [class_f1(counts, 0), class_f1(counts, 1)],
            support: [counts.support(0), counts.support(1)],
            degenerate,
        }
    }

    pub fn from_predictions(y_true: &[u8], y_pred: &[u8]) -> Result<MetricsReport, MetricsError> {
        Ok(MetricsReport::from_counts(&confusion_counts(y_true, y_pred)?))
    }

    /// Look up a metric by its report name.
    pub fn get(&self, metric: Metric) -> f64 {
        match metric {
            Metric::MicroF1 => self.micro_f1,
            Metric::MacroF1 => self.macro_f1,
            Metric::WeightedF1 => self.weighted_f1,
        }
    }
}

/// Selectable evaluation metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    MicroF1,
    MacroF1,
    WeightedF1,
}

impl Metric {
    pub fn parse(name: &str) -> Option<Metric> {
        match name {
            "micro_f1" => Some(Metric::MicroF1),
            "macro_f1" => Some(Metric::MacroF1),
            "weighted_f1" => Some(Metric::WeightedF1),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Metric::MicroF1 => "micro_f1",
            Metric::MacroF1 => "macro_f1",
            Metric::WeightedF1 => "weighted_f1",
        }
    }
}
