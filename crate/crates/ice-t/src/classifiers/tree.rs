//! CART-style decision tree with Gini impurity splits.
//!
//! Thresholds are midpoints of adjacent distinct observed feature values, so
//! ternary features examine at most 0.25 and 0.75. Split ties break toward
//! the lower feature index, then the lower threshold.

use rand::seq::SliceRandom;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ClassifierError, ClassifierSpec, ParamReader};
use crate::features::LabeledFeatureSet;

/// One candidate split, scored by weighted Gini decrease.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitCandidate {
    pub feature_index: usize,
    pub threshold: f64,
    pub impurity_decrease: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum TreeNode {
    Leaf {
        label: u8,
    },
    Split {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
}

impl TreeNode {
    pub fn predict(&self, x: &[f64]) -> u8 {
        match self {
            TreeNode::Leaf { label } => *label,
            TreeNode::Split {
                feature,
                threshold,
                left,
                right,
            } => {
                if x[*feature] <= *threshold {
                    left.predict(x)
                } else {
                    right.predict(x)
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeParams {
    pub root: TreeNode,
}

/// Gini impurity of a binary label multiset: 1 − p0² − p1².
pub fn gini_impurity(labels: &[u8]) -> Result<f64, ClassifierError> {
    if labels.is_empty() {
        return Err(ClassifierError::EmptyInput);
    }
    let ones = labels.iter().filter(|&&l| l == 1).count();
    Ok(gini_from_counts(labels.len() - ones, ones))
}

fn gini_from_counts(zeros: usize, ones: usize) -> f64 {
    let n = (zeros + ones) as f64;
    let p0 = zeros as f64 / n;
    let p1 = ones as f64 / n;
    1.0 - p0 * p0 - p1 * p1
}

/// How many features each split considers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureSubset {
    All,
    /// floor(sqrt(dim)), at least 1, sampled fresh per split.
    Sqrt,
}

/// Find the best split of `rows` among `candidate_features`.
///
/// Returns `None` when no candidate threshold both respects `min_leaf` on
/// each side and yields a strictly positive impurity decrease. Candidates are
/// scanned feature-ascending, threshold-ascending; only a strictly better
/// decrease replaces the incumbent, which implements the tie rule.
pub(crate) fn best_split_rows(
    data: &LabeledFeatureSet,
    rows: &[usize],
    candidate_features: &[usize],
    min_leaf: usize,
) -> Option<SplitCandidate> {
    let n = rows.len();
    if n < 2 {
        return None;
    }
    let total_ones = rows.iter().filter(|&&r| data.labels[r] == 1).count();
    let total_zeros = n - total_ones;
    let parent = gini_from_counts(total_zeros, total_ones);
    let mut best: Option<SplitCandidate> = None;

    for &f in candidate_features {
        // (value, label) sorted by value; prefix counts give exact tallies
        // left of each boundary between distinct values.
        let mut pairs: Vec<(f64, u8)> = rows
            .iter()
            .map(|&r| (data.vectors[r].values[f], data.labels[r]))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut left_ones = 0usize;
        for i in 0..n - 1 {
            if pairs[i].1 == 1 {
                left_ones += 1;
            }
            if pairs[i].0 == pairs[i + 1].0 {
                continue;
            }
            let left_n = i + 1;
            let right_n = n - left_n;
            if left_n < min_leaf || right_n < min_leaf {
                continue;
            }
            let threshold = (pairs[i].0 + pairs[i + 1].0) / 2.0;
            let right_ones = total_ones - left_ones;
            let weighted = (left_n as f64 / n as f64)
                * gini_from_counts(left_n - left_ones, left_ones)
                + (right_n as f64 / n as f64)
                    * gini_from_counts(right_n - right_ones, right_ones);
            let decrease = parent - weighted;
            if decrease > 0.0 && best.map_or(true, |b| decrease > b.impurity_decrease) {
                best = Some(SplitCandidate {
                    feature_index: f,
                    threshold,
                    impurity_decrease: decrease,
                });
            }
        }
    }
    best
}

/// Best split over all rows of `data` — the standalone entry point.
pub fn best_split(
    data: &LabeledFeatureSet,
    candidate_features: &[usize],
    min_leaf: usize,
) -> Option<SplitCandidate> {
    let rows: Vec<usize> = (0..data.len()).collect();
    best_split_rows(data, &rows, candidate_features, min_leaf)
}

fn majority_label(data: &LabeledFeatureSet, rows: &[usize]) -> u8 {
    let ones = rows.iter().filter(|&&r| data.labels[r] == 1).count();
    // tie resolves to 0
    if ones * 2 > rows.len() {
        1
    } else {
        0
    }
}

/// Recursive CART builder shared by the plain tree and the forest.
/// `rng` is consulted only when `subset` is `Sqrt`.
pub(crate) fn build_tree(
    data: &LabeledFeatureSet,
    rows: &[usize],
    depth_left: Option<usize>,
    min_leaf: usize,
    subset: FeatureSubset,
    rng: &mut Option<&mut ChaCha8Rng>,
) -> TreeNode {
    let leaf = |rows: &[usize]| TreeNode::Leaf {
        label: majority_label(data, rows),
    };
    if depth_left == Some(0) {
        return leaf(rows);
    }
    let first = data.labels[rows[0]];
    if rows.iter().all(|&r| data.labels[r] == first) {
        return TreeNode::Leaf { label: first };
    }

    let dim = data.dim();
    let candidates: Vec<usize> = match subset {
        FeatureSubset::All => (0..dim).collect(),
        FeatureSubset::Sqrt => {
            let take = ((dim as f64).sqrt().floor() as usize).max(1);
            let mut all: Vec<usize> = (0..dim).collect();
            let rng = rng.as_mut().expect("sqrt subset requires an rng");
            all.shuffle(rng);
            let mut chosen: Vec<usize> = all.into_iter().take(take).collect();
            chosen.sort_unstable();
            chosen
        }
    };

    match best_split_rows(data, rows, &candidates, min_leaf) {
        None => leaf(rows),
        Some(split) => {
            let (left_rows, right_rows): (Vec<usize>, Vec<usize>) = rows
                .iter()
                .partition(|&&r| data.vectors[r].values[split.feature_index] <= split.threshold);
            let next_depth = depth_left.map(|d| d - 1);
            TreeNode::Split {
                feature: split.feature_index,
                threshold: split.threshold,
                left: Box::new(build_tree(data, &left_rows, next_depth, min_leaf, subset, rng)),
                right: Box::new(build_tree(data, &right_rows, next_depth, min_leaf, subset, rng)),
            }
        }
    }
}

pub(super) const ALLOWED: &[&str] = &["max_depth", "min_leaf"];

pub(super) fn read_tree_params(
    reader: &ParamReader<'_>,
) -> Result<(Option<usize>, usize), ClassifierError> {
    // max_depth 0 means unbounded
    let max_depth = match reader.usize_min("max_depth", 0, 0)? {
        0 => None,
        d => Some(d),
    };
    let min_leaf = reader.usize_min("min_leaf", 1, 1)?;
    Ok((max_depth, min_leaf))
}

pub(super) fn fit(
    spec: &ClassifierSpec,
    data: &LabeledFeatureSet,
) -> Result<TreeParams, ClassifierError> {
    let reader = ParamReader::new("decision_tree", &spec.hyperparameters, ALLOWED)?;
    let (max_depth, min_leaf) = read_tree_params(&reader)?;
    let rows: Vec<usize> = (0..data.len()).collect();
    let root = build_tree(data, &rows, max_depth, min_leaf, FeatureSubset::All, &mut None);
    Ok(TreeParams { root })
}

pub(super) fn predict(params: &TreeParams, x: &[f64]) -> u8 {
    params.root.predict(x)
}
