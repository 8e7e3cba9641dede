//! From-scratch classifiers over low-dimensional ternary feature vectors.
//!
//! All seven algorithms sit behind one `fit`/`predict` surface keyed by a
//! [`ClassifierSpec`]. Fitting is deterministic given (spec, data, seed), and
//! a serialized model reloads prediction-exact.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::features::LabeledFeatureSet;
use crate::util::atomic_write;

pub mod adaboost;
pub mod forest;
pub mod gbdt;
pub mod knn;
pub mod naive_bayes;
pub mod tree;

/// Model artifact schema version; bumped on incompatible layout changes.
pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ClassifierError {
    #[error("invalid hyperparameter `{name}` = {value} for {algorithm}: {reason}")]
    InvalidHyperparameter {
        algorithm: &'static str,
        name: String,
        value: String,
        reason: String,
    },
    #[error("cannot fit on an empty dataset")]
    EmptyDataset,
    #[error("input has {found} features but the model expects {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("k={k} exceeds the {available} stored training points")]
    KTooLarge { k: usize, available: usize },
    #[error("class {0} is absent from the training data")]
    MissingClass(u8),
    #[error("empty input")]
    EmptyInput,
    #[error("no stump with weighted error below 0.5")]
    NoUsefulStump,
    #[error("hessian sum plus lambda is not positive")]
    DegenerateHessian,
    #[error("model artifact has format_version {found}, this build supports {supported}")]
    UnsupportedVersion { found: i64, supported: u32 },
    #[error("{path}: {message}")]
    Artifact { path: String, message: String },
}

/// The classifier roster, in reporting order. Ties in model selection break
/// toward the earlier entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Knn,
    DecisionTree,
    RandomForest,
    GaussianNb,
    MultinomialNb,
    AdaBoost,
    Gbdt,
}

impl Algorithm {
    pub const ROSTER: [Algorithm; 7] = [
        Algorithm::Knn,
        Algorithm::DecisionTree,
        Algorithm::RandomForest,
        Algorithm::GaussianNb,
        Algorithm::MultinomialNb,
        Algorithm::AdaBoost,
        Algorithm::Gbdt,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Knn => "knn",
            Algorithm::DecisionTree => "decision_tree",
            Algorithm::RandomForest => "random_forest",
            Algorithm::GaussianNb => "gaussian_nb",
            Algorithm::MultinomialNb => "multinomial_nb",
            Algorithm::AdaBoost => "adaboost",
            Algorithm::Gbdt => "gbdt",
        }
    }

    pub fn parse(name: &str) -> Option<Algorithm> {
        Algorithm::ROSTER.iter().copied().find(|a| a.name() == name)
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A hyperparameter value. Untagged so JSON/TOML literals map naturally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamValue {
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Bool(b) => write!(f, "{b}"),
            ParamValue::Int(i) => write!(f, "{i}"),
            ParamValue::Float(x) => write!(f, "{x}"),
            ParamValue::Str(s) => write!(f, "{s}"),
        }
    }
}

/// An algorithm plus concrete hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierSpec {
    pub algorithm: Algorithm,
    #[serde(default)]
    pub hyperparameters: BTreeMap<String, ParamValue>,
}

impl ClassifierSpec {
    pub fn new(algorithm: Algorithm) -> Self {
        ClassifierSpec {
            algorithm,
            hyperparameters: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: ParamValue) -> Self {
        self.hyperparameters.insert(name.to_string(), value);
        self
    }

    /// Compact `k=v;k=v` rendering for CSV reports (keys sorted).
    pub fn params_string(&self) -> String {
        self.hyperparameters
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

/// Typed accessor over the hyperparameter map with per-algorithm validation.
pub(crate) struct ParamReader<'a> {
    algorithm: &'static str,
    map: &'a BTreeMap<String, ParamValue>,
    allowed: &'static [&'static str],
}

impl<'a> ParamReader<'a> {
    pub fn new(
        algorithm: &'static str,
        map: &'a BTreeMap<String, ParamValue>,
        allowed: &'static [&'static str],
    ) -> Result<Self, ClassifierError> {
        for key in map.keys() {
            if !allowed.contains(&key.as_str()) {
                return Err(ClassifierError::InvalidHyperparameter {
                    algorithm,
                    name: key.clone(),
                    value: map[key].to_string(),
                    reason: "unknown hyperparameter".into(),
                });
            }
        }
        Ok(ParamReader { algorithm, map, allowed })
    }

    fn invalid(&self, name: &str, reason: &str) -> ClassifierError {
        ClassifierError::InvalidHyperparameter {
            algorithm: self.algorithm,
            name: name.to_string(),
            value: self.map.get(name).map(|v| v.to_string()).unwrap_or_default(),
            reason: reason.to_string(),
        }
    }

    pub fn usize_min(&self, name: &str, default: usize, min: usize) -> Result<usize, ClassifierError> {
        debug_assert!(self.allowed.contains(&name));
        match self.map.get(name) {
            None => Ok(default),
            Some(ParamValue::Int(i)) if *i >= min as i64 => Ok(*i as usize),
            Some(ParamValue::Int(_)) => Err(self.invalid(name, &format!("must be ≥ {min}"))),
            Some(_) => Err(self.invalid(name, "must be an integer")),
        }
    }

    pub fn f64_range(
        &self,
        name: &str,
        default: f64,
        lo: f64,
        hi: f64,
    ) -> Result<f64, ClassifierError> {
        let v = match self.map.get(name) {
            None => return Ok(default),
            Some(ParamValue::Float(x)) => *x,
            Some(ParamValue::Int(i)) => *i as f64,
            Some(_) => return Err(self.invalid(name, "must be a number")),
        };
        if v.is_finite() && v >= lo && v <= hi {
            Ok(v)
        } else {
            Err(self.invalid(name, &format!("must be in [{lo}, {hi}]")))
        }
    }

    pub fn boolean(&self, name: &str, default: bool) -> Result<bool, ClassifierError> {
        match self.map.get(name) {
            None => Ok(default),
            Some(ParamValue::Bool(b)) => Ok(*b),
            Some(_) => Err(self.invalid(name, "must be a boolean")),
        }
    }

    pub fn string_of(
        &self,
        name: &str,
        default: &str,
        options: &[&str],
    ) -> Result<String, ClassifierError> {
        match self.map.get(name) {
            None => Ok(default.to_string()),
            Some(ParamValue::Str(s)) if options.contains(&s.as_str()) => Ok(s.clone()),
            Some(_) => Err(self.invalid(name, &format!("must be one of {options:?}"))),
        }
    }
}

/// Learned state, one variant per algorithm plus the degenerate constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelParams {
    Constant { label: u8 },
    Knn(knn::KnnParams),
    Tree(tree::TreeParams),
    Forest(forest::ForestParams),
    GaussianNb(naive_bayes::GaussianNbParams),
    MultinomialNb(naive_bayes::MultinomialNbParams),
    AdaBoost(adaboost::AdaBoostParams),
    Gbdt(gbdt::GbdtParams),
}

/// A fitted classifier: immutable, serializable, reload-exact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub format_version: u32,
    pub spec: ClassifierSpec,
    pub feature_dim: usize,
    pub train_seed: u64,
    pub parameters: ModelParams,
}

/// Fit `spec` on `data`. Deterministic given (spec, data, seed); single-class
/// data yields a constant classifier for every algorithm.
pub fn fit(
    spec: &ClassifierSpec,
    data: &LabeledFeatureSet,
    seed: u64,
) -> Result<TrainedModel, ClassifierError> {
    if data.is_empty() {
        return Err(ClassifierError::EmptyDataset);
    }
    let feature_dim = data.dim();
    let has = |c: u8| data.labels.iter().any(|&l| l == c);
    let parameters = if !has(0) || !has(1) {
        ModelParams::Constant {
            label: data.labels[0],
        }
    } else {
        match spec.algorithm {
            Algorithm::Knn => ModelParams::Knn(knn::fit(spec, data)?),
            Algorithm::DecisionTree => ModelParams::Tree(tree::fit(spec, data)?),
            Algorithm::RandomForest => ModelParams::Forest(forest::fit(spec, data, seed)?),
            Algorithm::GaussianNb => ModelParams::GaussianNb(naive_bayes::fit_gaussian(spec, data)?),
            Algorithm::MultinomialNb => {
                ModelParams::MultinomialNb(naive_bayes::fit_multinomial(spec, data)?)
            }
            Algorithm::AdaBoost => ModelParams::AdaBoost(adaboost::fit(spec, data)?),
            Algorithm::Gbdt => ModelParams::Gbdt(gbdt::fit(spec, data)?),
        }
    };
    Ok(TrainedModel {
        format_version: MODEL_FORMAT_VERSION,
        spec: spec.clone(),
        feature_dim,
        train_seed: seed,
        parameters,
    })
}

impl TrainedModel {
    /// Predict the binary label for one feature vector.
    pub fn predict(&self, x: &[f64]) -> Result<u8, ClassifierError> {
        if x.len() != self.feature_dim {
            return Err(ClassifierError::DimensionMismatch {
                expected: self.feature_dim,
                found: x.len(),
            });
        }
        Ok(match &self.parameters {
            ModelParams::Constant { label } => *label,
            ModelParams::Knn(p) => knn::predict(p, x)?,
            ModelParams::Tree(p) => tree::predict(p, x),
            ModelParams::Forest(p) => forest::predict(p, x),
            ModelParams::GaussianNb(p) => naive_bayes::predict_gaussian(p, x),
            ModelParams::MultinomialNb(p) => naive_bayes::predict_multinomial(p, x),
            ModelParams::AdaBoost(p) => adaboost::predict(p, x),
            ModelParams::Gbdt(p) => gbdt::predict(p, x),
        })
    }

    /// Predict every row of a feature set.
    pub fn predict_all(&self, data: &LabeledFeatureSet) -> Result<Vec<u8>, ClassifierError> {
        data.vectors.iter().map(|v| self.predict(&v.values)).collect()
    }

    pub fn save(&self, path: &Path) -> Result<(), ClassifierError> {
        let mut text = serde_json::to_string_pretty(self).expect("model serializes");
        text.push('\n');
        atomic_write(path, text.as_bytes()).map_err(|e| ClassifierError::Artifact {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<TrainedModel, ClassifierError> {
        let artifact = |message: String| ClassifierError::Artifact {
            path: path.display().to_string(),
            message,
        };
        let text = std::fs::read_to_string(path).map_err(|e| artifact(e.to_string()))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| artifact(e.to_string()))?;
        let found = value
            .get("format_version")
            .and_then(|v| v.as_i64())
            .ok_or_else(|| artifact("missing format_version".into()))?;
        if found != MODEL_FORMAT_VERSION as i64 {
            return Err(ClassifierError::UnsupportedVersion {
                found,
                supported: MODEL_FORMAT_VERSION,
            });
        }
        serde_json::from_value(value).map_err(|e| artifact(e.to_string()))
    }
}

/// The declared default hyperparameter grid for each algorithm.
///
/// These are this artifact's defaults, overridable through run configuration;
/// keys sort alphabetically so grid enumeration order is reproducible.
pub fn default_grid(algorithm: Algorithm) -> BTreeMap<String, Vec<ParamValue>> {
    use ParamValue::{Bool, Float, Int, Str};
    let mut grid = BTreeMap::new();
    match algorithm {
        Algorithm::Knn => {
            grid.insert("k".into(), vec![Int(1), Int(3), Int(5), Int(7)]);
        }
        Algorithm::DecisionTree => {
            // max_depth 0 means unbounded
            grid.insert("max_depth".into(), vec![Int(2), Int(3), Int(5), Int(0)]);
            grid.insert("min_leaf".into(), vec![Int(1), Int(3), Int(5)]);
        }
        Algorithm::RandomForest => {
            grid.insert("trees".into(), vec![Int(50), Int(100), Int(200)]);
            grid.insert(
                "feature_subset".into(),
                vec![Str("sqrt".into()), Str("all".into())],
            );
            grid.insert("bootstrap".into(), vec![Bool(true)]);
        }
        Algorithm::GaussianNb => {
            grid.insert("var_floor".into(), vec![Float(1e-9), Float(1e-6)]);
        }
        Algorithm::MultinomialNb => {
            grid.insert("alpha".into(), vec![Float(0.5), Float(1.0)]);
        }
        Algorithm::AdaBoost => {
            grid.insert("rounds".into(), vec![Int(25), Int(50), Int(100)]);
        }
        Algorithm::Gbdt => {
            grid.insert("trees".into(), vec![Int(50), Int(100)]);
            grid.insert("depth".into(), vec![Int(1), Int(2), Int(3)]);
            grid.insert("shrinkage".into(), vec![Float(0.1), Float(0.3)]);
            grid.insert("lambda".into(), vec![Float(0.0), Float(1.0)]);
        }
    }
    grid
}

#[cfg(test)]
pub(crate) mod test_support {
    use crate::features::{FeatureVector, LabeledFeatureSet};
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Build a labeled set from plain rows.
    pub fn set_from(rows: &[(&[f64], u8)]) -> LabeledFeatureSet {
        let vectors = rows
            .iter()
            .enumerate()
            .map(|(i, (values, _))| FeatureVector::new(format!("doc{i}"), values.to_vec()).unwrap())
            .collect();
        let labels = rows.iter().map(|&(_, l)| l).collect();
        LabeledFeatureSet::new(vectors, labels).unwrap()
    }

    /// Random ternary dataset with both classes present.
    pub fn random_ternary(seed: u64, size: usize, dim: usize) -> LabeledFeatureSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut vectors = Vec::with_capacity(size);
        let mut labels = Vec::with_capacity(size);
        for i in 0..size {
            let values: Vec<f64> = (0..dim)
                .map(|_| [0.0, 0.5, 1.0][rng.gen_range(0..3)])
                .collect();
            vectors.push(FeatureVector::new(format!("doc{i}"), values).unwrap());
            labels.push(if i < 2 { i as u8 } else { rng.gen_range(0..2) as u8 });
        }
        LabeledFeatureSet::new(vectors, labels).unwrap()
    }

    /// Every point of the ternary probe grid {0, 0.5, 1}^dim.
    pub fn ternary_grid(dim: usize) -> Vec<Vec<f64>> {
        let mut points = vec![vec![]];
        for _ in 0..dim {
            let mut next = Vec::with_capacity(points.len() * 3);
            for p in &points {
                for v in [0.0, 0.5, 1.0] {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
            points = next;
        }
        points
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::set_from;
    use super::*;

    #[test]
    fn single_class_data_yields_constant_model() {
        let data = set_from(&[(&[0.0, 1.0], 1), (&[1.0, 0.5], 1)]);
        for algorithm in Algorithm::ROSTER {
            let model = fit(&ClassifierSpec::new(algorithm), &data, 0).unwrap();
            assert!(matches!(model.parameters, ModelParams::Constant { label: 1 }));
            assert_eq!(model.predict(&[0.5, 0.5]).unwrap(), 1);
        }
    }

    #[test]
    fn empty_dataset_rejected() {
        let data = LabeledFeatureSet::new(vec![], vec![]).unwrap();
        assert!(matches!(
            fit(&ClassifierSpec::new(Algorithm::Knn), &data, 0),
            Err(ClassifierError::EmptyDataset)
        ));
    }

    #[test]
    fn predict_rejects_wrong_dimension() {
        let data = set_from(&[(&[0.0, 1.0], 0), (&[1.0, 0.0], 1)]);
        let model = fit(&ClassifierSpec::new(Algorithm::DecisionTree), &data, 0).unwrap();
        assert!(matches!(
            model.predict(&[0.0]),
            Err(ClassifierError::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn unknown_hyperparameter_rejected() {
        let data = set_from(&[(&[0.0], 0), (&[1.0], 1)]);
        let spec = ClassifierSpec::new(Algorithm::Knn).with("banana", ParamValue::Int(1));
        assert!(matches!(
            fit(&spec, &data, 0),
            Err(ClassifierError::InvalidHyperparameter { .. })
        ));
    }

    #[test]
    fn model_round_trips_through_json_file() {
        let data = set_from(&[
            (&[0.0, 0.5], 0),
            (&[1.0, 0.5], 1),
            (&[0.0, 1.0], 0),
            (&[1.0, 0.0], 1),
        ]);
        let dir = tempfile::tempdir().unwrap();
        for algorithm in Algorithm::ROSTER {
            let model = fit(&ClassifierSpec::new(algorithm), &data, 9).unwrap();
            let path = dir.path().join(format!("{algorithm}.json"));
            model.save(&path).unwrap();
            let reloaded = TrainedModel::load(&path).unwrap();
            assert_eq!(reloaded, model);
            for probe in super::test_support::ternary_grid(2) {
                assert_eq!(reloaded.predict(&probe).unwrap(), model.predict(&probe).unwrap());
            }
        }
    }

    #[test]
    fn future_format_version_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.json");
        std::fs::write(&path, "{\"format_version\": 99}").unwrap();
        assert!(matches!(
            TrainedModel::load(&path),
            Err(ClassifierError::UnsupportedVersion { found: 99, .. })
        ));
    }

    #[test]
    fn fit_is_deterministic_given_seed() {
        let data = super::test_support::random_ternary(5, 24, 4);
        for algorithm in Algorithm::ROSTER {
            let spec = ClassifierSpec::new(algorithm);
            let a = fit(&spec, &data, 77).unwrap();
            let b = fit(&spec, &data, 77).unwrap();
            assert_eq!(
                serde_json::to_string(&a).unwrap(),
                serde_json::to_string(&b).unwrap(),
                "{algorithm} not deterministic"
            );
        }
    }
}
