//! Stratified k-fold assignment.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FoldError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(usize),
    #[error("class {class} has {count} samples, fewer than k={k} folds")]
    ClassTooSmall { class: u8, count: usize, k: usize },
    #[error("label {0} is not binary (0/1)")]
    InvalidLabel(u8),
}

/// Fold index per sample, in sample order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldAssignment {
    pub k: usize,
    pub fold_of: Vec<usize>,
}

impl FoldAssignment {
    /// Row indices of the held-out fold.
    pub fn test_rows(&self, fold: usize) -> Vec<usize> {
        (0..self.fold_of.len())
            .filter(|&i| self.fold_of[i] == fold)
            .collect()
    }

    /// Row indices outside the held-out fold.
    pub fn train_rows(&self, fold: usize) -> Vec<usize> {
        (0..self.fold_of.len())
            .filter(|&i| self.fold_of[i] != fold)
            .collect()
    }
}

/// Assign samples to k folds, stratified by class.
///
/// Within each class the sample indices are shuffled by `seed` and dealt
/// round-robin, so per-fold class counts deviate from exact proportionality
/// by at most one. Deterministic given `seed`.
pub fn stratified_kfold(labels: &[u8], k: usize, seed: u64) -> Result<FoldAssignment, FoldError> {
    if k < 2 {
        return Err(FoldError::KTooSmall(k));
    }
    for &l in labels {
        if l > 1 {
            return Err(FoldError::InvalidLabel(l));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fold_of = vec![0usize; labels.len()];
    for class in 0..2u8 {
        let mut rows: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == class).collect();
        if rows.is_empty() {
            continue; // a class entirely absent is the caller's concern
        }
        if rows.len() < k {
            return Err(FoldError::ClassTooSmall {
                class,
                count: rows.len(),
                k,
            });
        }
        rows.shuffle(&mut rng);
        for (i, row) in rows.into_iter().enumerate() {
            fold_of[row] = i % k;
        }
    }
    Ok(FoldAssignment { k, fold_of })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class_counts(labels: &[u8], assignment: &FoldAssignment, class: u8) -> Vec<usize> {
        (0..assignment.k)
            .map(|f| {
                labels
                    .iter()
                    .zip(&assignment.fold_of)
                    .filter(|&(&l, &fo)| l == class && fo == f)
                    .count()
            })
            .collect()
    }

    #[test]
    fn perfect_divisibility_gives_one_of_each_per_fold() {
        let labels = [1, 1, 1, 1, 1, 0, 0, 0, 0, 0];
        let a = stratified_kfold(&labels, 5, 7).unwrap();
        assert_eq!(class_counts(&labels, &a, 0), vec![1; 5]);
        assert_eq!(class_counts(&labels, &a, 1), vec![1; 5]);
    }

    #[test]
    fn seven_positives_in_five_folds() {
        let mut labels = vec![1u8; 7];
        labels.extend(vec![0u8; 10]);
        let a = stratified_kfold(&labels, 5, 3).unwrap();
        let mut counts = class_counts(&labels, &a, 1);
        counts.sort_unstable();
        assert_eq!(counts, vec![1, 1, 1, 2, 2]);
    }

    #[test]
    fn class_too_small_is_an_error() {
        let mut labels = vec![1u8; 3];
        labels.extend(vec![0u8; 10]);
        assert_eq!(
            stratified_kfold(&labels, 5, 0),
            Err(FoldError::ClassTooSmall { class: 1, count: 3, k: 5 })
        );
    }

    #[test]
    fn partitions_every_sample_exactly_once() {
        let labels: Vec<u8> = (0..37).map(|i| (i % 3 == 0) as u8).collect();
        let a = stratified_kfold(&labels, 4, 11).unwrap();
        assert_eq!(a.fold_of.len(), labels.len());
        let covered: usize = (0..4).map(|f| a.test_rows(f).len()).sum();
        assert_eq!(covered, labels.len());
        for f in 0..4 {
            let test = a.test_rows(f);
            let train = a.train_rows(f);
            assert_eq!(test.len() + train.len(), labels.len());
            assert!(test.iter().all(|i| !train.contains(i)));
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let labels: Vec<u8> = (0..40).map(|i| (i % 2) as u8).collect();
        assert_eq!(
            stratified_kfold(&labels, 5, 9).unwrap(),
            stratified_kfold(&labels, 5, 9).unwrap()
        );
        assert_ne!(
            stratified_kfold(&labels, 5, 9).unwrap(),
            stratified_kfold(&labels, 5, 10).unwrap()
        );
    }
}
