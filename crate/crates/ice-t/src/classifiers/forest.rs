//! Random forest: bagged CART trees with per-split feature subsampling.
//!
//! Tree i derives its RNG from `seed + i`, so parallel and serial training
//! produce bitwise-identical forests.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::tree::{build_tree, FeatureSubset, TreeNode};
use super::{ClassifierError, ClassifierSpec, ParamReader};
use crate::features::LabeledFeatureSet;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForestParams {
    pub trees: Vec<TreeNode>,
}

pub(super) const ALLOWED: &[&str] =
    &["trees", "max_depth", "min_leaf", "feature_subset", "bootstrap"];

pub(super) fn fit(
    spec: &ClassifierSpec,
    data: &LabeledFeatureSet,
    seed: u64,
) -> Result<ForestParams, ClassifierError> {
    let reader = ParamReader::new("random_forest", &spec.hyperparameters, ALLOWED)?;
    let n_trees = reader.usize_min("trees", 100, 1)?;
    let (max_depth, min_leaf) = super::tree::read_tree_params(&reader)?;
    let subset = match reader.string_of("feature_subset", "sqrt", &["sqrt", "all"])?.as_str() {
        "all" => FeatureSubset::All,
        _ => FeatureSubset::Sqrt,
    };
    let bootstrap = reader.boolean("bootstrap", true)?;

    let n = data.len();
    let trees: Vec<TreeNode> = (0..n_trees)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let rows: Vec<usize> = if bootstrap {
                (0..n).map(|_| rng.gen_range(0..n)).collect()
            } else {
                (0..n).collect()
            };
            build_tree(data, &rows, max_depth, min_leaf, subset, &mut Some(&mut rng))
        })
        .collect();
    Ok(ForestParams { trees })
}

pub(super) fn predict(params: &ForestParams, x: &[f64]) -> u8 {
    let ones: usize = params.trees.iter().map(|t| t.predict(x) as usize).sum();
    // vote tie resolves to 0
    if ones * 2 > params.trees.len() {
        1
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::test_support::{random_ternary, ternary_grid};
    use crate::classifiers::{fit as fit_model, Algorithm, ClassifierSpec, ParamValue};

    fn single_tree_forest_spec() -> ClassifierSpec {
        ClassifierSpec::new(Algorithm::RandomForest)
            .with("trees", ParamValue::Int(1))
            .with("bootstrap", ParamValue::Bool(false))
            .with("feature_subset", ParamValue::Str("all".into()))
    }

    #[test]
    fn one_tree_no_bootstrap_all_features_equals_decision_tree() {
        for seed in 0..10u64 {
            let dim = 2 + (seed as usize % 4);
            let data = random_ternary(seed * 13 + 1, 25, dim);
            let forest = fit_model(&single_tree_forest_spec(), &data, seed).unwrap();
            let tree = fit_model(&ClassifierSpec::new(Algorithm::DecisionTree), &data, seed).unwrap();
            for probe in ternary_grid(dim) {
                assert_eq!(
                    forest.predict(&probe).unwrap(),
                    tree.predict(&probe).unwrap(),
                    "divergence at {probe:?} (seed {seed})"
                );
            }
        }
    }

    #[test]
    fn forest_is_deterministic_and_matches_serial_member_order() {
        let data = random_ternary(11, 40, 5);
        let spec = ClassifierSpec::new(Algorithm::RandomForest).with("trees", ParamValue::Int(32));
        let a = fit_model(&spec, &data, 3).unwrap();
        let b = fit_model(&spec, &data, 3).unwrap();
        assert_eq!(a, b);

        // serial reference: same per-tree seeding, sequential loop
        if let crate::classifiers::ModelParams::Forest(p) = &a.parameters {
            use rand::SeedableRng;
            for (i, t) in p.trees.iter().enumerate() {
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3u64.wrapping_add(i as u64));
                let rows: Vec<usize> = (0..data.len())
                    .map(|_| rand::Rng::gen_range(&mut rng, 0..data.len()))
                    .collect();
                let reference = crate::classifiers::tree::build_tree(
                    &data,
                    &rows,
                    None,
                    1,
                    crate::classifiers::tree::FeatureSubset::Sqrt,
                    &mut Some(&mut rng),
                );
                assert_eq!(t, &reference, "tree {i} differs from serial build");
            }
        } else {
            panic!("expected forest params");
        }
    }

    #[test]
    fn vote_tie_resolves_to_zero() {
        let params = ForestParams {
            trees: vec![TreeNode::Leaf { label: 1 }, TreeNode::Leaf { label: 0 }],
        };
        assert_eq!(predict(&params, &[0.0]), 0);
    }
}
