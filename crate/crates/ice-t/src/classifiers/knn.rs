//! K-nearest-neighbors over the stored training set.
//!
//! Euclidean metric; distance ties break toward the lower training-row index
//! and vote ties toward label 0. The datasets here are tiny, so prediction is
//! a full scan — no index structures.

use serde::{Deserialize, Serialize};

use super::{ClassifierError, ClassifierSpec, ParamReader};
use crate::features::LabeledFeatureSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnnParams {
    pub k: usize,
    pub vectors: Vec<Vec<f64>>,
    pub labels: Vec<u8>,
}

/// Majority vote among the k nearest stored points.
pub fn knn_vote(
    vectors: &[Vec<f64>],
    labels: &[u8],
    x: &[f64],
    k: usize,
) -> Result<u8, ClassifierError> {
    if k == 0 || k > vectors.len() {
        return Err(ClassifierError::KTooLarge {
            k,
            available: vectors.len(),
        });
    }
    // squared distance preserves the Euclidean ordering exactly
    let mut order: Vec<(f64, usize)> = vectors
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let d2: f64 = v.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
            (d2, i)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    let ones = order[..k].iter().filter(|&&(_, i)| labels[i] == 1).count();
    Ok(if ones * 2 > k { 1 } else { 0 })
}

pub(super) const ALLOWED: &[&str] = &["k"];

pub(super) fn fit(
    spec: &ClassifierSpec,
    data: &LabeledFeatureSet,
) -> Result<KnnParams, ClassifierError> {
    let reader = ParamReader::new("knn", &spec.hyperparameters, ALLOWED)?;
    let k = reader.usize_min("k", 5, 1)?;
    if k > data.len() {
        return Err(ClassifierError::KTooLarge {
            k,
            available: data.len(),
        });
    }
    Ok(KnnParams {
        k,
        vectors: data.vectors.iter().map(|v| v.values.clone()).collect(),
        labels: data.labels.clone(),
    })
}

pub(super) fn predict(params: &KnnParams, x: &[f64]) -> Result<u8, ClassifierError> {
    knn_vote(&params.vectors, &params.labels, x, params.k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn store() -> (Vec<Vec<f64>>, Vec<u8>) {
        (
            vec![
                vec![0.0, 0.0],
                vec![1.0, 1.0],
                vec![1.0, 0.5],
                vec![0.0, 0.5],
                vec![0.5, 0.5],
            ],
            vec![0, 1, 1, 0, 1],
        )
    }

    #[test]
    fn nearest_self_with_unique_coordinates() {
        let (v, l) = store();
        assert_eq!(knn_vote(&v, &l, &[1.0, 1.0], 1).unwrap(), 1);
        assert_eq!(knn_vote(&v, &l, &[0.0, 0.5], 1).unwrap(), 0);
    }

    #[test]
    fn hand_enumerated_three_neighbor_vote() {
        let (v, l) = store();
        // distances² from [1, 0]: row0 = 1, row1 = 1, row2 = 0.25,
        // row3 = 1.25, row4 = 0.5 → nearest 3 = rows {2, 4, 0}, labels {1,1,0} → 1
        assert_eq!(knn_vote(&v, &l, &[1.0, 0.0], 3).unwrap(), 1);
        // distances² from [0, 1]: row0 = 1, row1 = 1, row2 = 1.25,
        // row3 = 0.25, row4 = 0.5 → nearest 3 = rows {3, 4, 0}, labels {0,1,0} → 0
        assert_eq!(knn_vote(&v, &l, &[0.0, 1.0], 3).unwrap(), 0);
    }

    #[test]
    fn even_vote_tie_goes_to_zero() {
        let (v, l) = store();
        // from [0.5, 0.5]: row4 at 0, rows 0..=3 all at 0.5 → k=2 picks rows 4 (label 1)
        // and 0 (label 0, lowest index among the tied) → 1–1 tie → 0
        assert_eq!(knn_vote(&v, &l, &[0.5, 0.5], 2).unwrap(), 0);
    }

    #[test]
    fn distance_tie_breaks_by_row_index() {
        let v = vec![vec![0.0], vec![1.0], vec![1.0]];
        let l = vec![0, 1, 0];
        // rows 1 and 2 are equidistant from the probe; k=1 must take row 1
        assert_eq!(knn_vote(&v, &l, &[1.0], 1).unwrap(), 1);
    }

    #[test]
    fn k_out_of_range() {
        let (v, l) = store();
        assert!(matches!(
            knn_vote(&v, &l, &[0.0, 0.0], 6),
            Err(ClassifierError::KTooLarge { k: 6, available: 5 })
        ));
        assert!(matches!(
            knn_vote(&v, &l, &[0.0, 0.0], 0),
            Err(ClassifierError::KTooLarge { .. })
        ));
    }
}
