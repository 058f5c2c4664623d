use super::search::{random_shapelet_search, PreparedSeries, Shapelet};
use crate::classifier::{Classifier, Model};
use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};
use crate::tree::{fit_random_forest, FeatureMatrix, ForestModel, TreeConfig};
use crate::{par, seed};

/// When the shapelet search stops.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StcContract {
    /// Evaluate exactly this many candidates (reproducible).
    MaxCandidates(usize),
    /// Evaluate candidates until this much wall-clock time has passed.
    Minutes(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StcConfig {
    pub contract: StcContract,
    /// Defaults to `min(10 * n_cases, 1000)`.
    pub max_retained_shapelets: Option<usize>,
    pub min_len: usize,
    /// Defaults to the series length.
    pub max_len: Option<usize>,
    pub forest_trees: usize,
    pub seed: u64,
}

impl Default for StcConfig {
    fn default() -> Self {
        Self {
            contract: StcContract::Minutes(300.0),
            max_retained_shapelets: None,
            min_len: 3,
            max_len: None,
            forest_trees: 500,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StcModel {
    pub shapelets: Vec<Shapelet>,
    pub forest: ForestModel,
    pub class_labels: Vec<String>,
    pub series_length: usize,
}

/// Row `i`, column `j`: distance from shapelet `j` to series `i`.
pub fn shapelet_transform(shapelets: &[Shapelet], data: &TimeSeriesDataset) -> Result<FeatureMatrix> {
    let rows = par::try_map_range(data.len(), |i| transform_one(shapelets, data.series(i)))?;
    FeatureMatrix::from_rows(&rows)
}

fn transform_one(shapelets: &[Shapelet], series: &[f64]) -> Result<Vec<f64>> {
    let p = PreparedSeries::new(series);
    shapelets.iter().map(|s| p.distance(&s.values)).collect()
}

pub fn stc_fit(train: &TimeSeriesDataset, config: &StcConfig) -> Result<StcModel> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if let StcContract::Minutes(m) = config.contract {
        if !(m > 0.0 && m.is_finite()) {
            return Err(Error::InvalidConfig("contract minutes must be positive".into()));
        }
    }
    let shapelets = random_shapelet_search(train, config)?;
    let x = shapelet_transform(&shapelets, train)?;
    let tree = TreeConfig {
        seed: seed::derive(config.seed, 1),
        ..TreeConfig::default()
    };
    let forest = fit_random_forest(&x, train.targets(), train.n_classes(), config.forest_trees, &tree)?;
    Ok(StcModel {
        shapelets,
        forest,
        class_labels: train.class_labels().to_vec(),
        series_length: train.series_length(),
    })
}

impl Model for StcModel {
    fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    fn series_length(&self) -> usize {
        self.series_length
    }

    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>> {
        self.check_length(series.len())?;
        self.forest.predict_proba(&transform_one(&self.shapelets, series)?)
    }
}

impl Classifier for StcConfig {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>> {
        Ok(Box::new(stc_fit(train, self)?))
    }

    fn describe(&self) -> String {
        let contract = match self.contract {
            StcContract::MaxCandidates(k) => format!("max_candidates={k}"),
            StcContract::Minutes(m) => format!("contract_minutes={m}"),
        };
        format!(
            "{contract},min_len={},forest_trees={},seed={}",
            self.min_len, self.forest_trees, self.seed
        )
    }
}
