use std::sync::Arc;

use crate::classifier::{Classifier, Model};
use crate::data::TimeSeriesDataset;
use crate::distance::DistanceSpec;
use crate::error::{Error, Result};

/// Index and distance of the candidate nearest to `query`, scanning in
/// iterator order; a later candidate must be strictly closer to win.
pub fn nearest_neighbour<'a, I>(spec: &DistanceSpec, query: &[f64], candidates: I) -> Option<(usize, f64)>
where
    I: IntoIterator<Item = (usize, &'a [f64])>,
{
    let mut best: Option<(usize, f64)> = None;
    for (j, c) in candidates {
        let cutoff = best.map_or(f64::INFINITY, |b| b.1);
        let d = spec.distance_prepared(query, c, cutoff);
        if best.is_none() || d < cutoff {
            best = Some((j, d));
        }
    }
    best
}

/// 1NN configuration for a single distance spec.
#[derive(Debug, Clone, PartialEq)]
pub struct NnConfig {
    pub spec: DistanceSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NnModel {
    pub train: Arc<TimeSeriesDataset>,
    pub spec: DistanceSpec,
    prepared: Vec<Vec<f64>>,
}

impl NnModel {
    pub fn new(train: Arc<TimeSeriesDataset>, spec: DistanceSpec) -> Result<Self> {
        if train.is_empty() {
            return Err(Error::EmptyTrainingSet);
        }
        spec.validate()?;
        let prepared = (0..train.len())
            .map(|i| Ok(spec.prepare(train.series(i))?.into_owned()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { train, spec, prepared })
    }

    /// Class index of the nearest training case and its one-hot distribution.
    pub fn nn1_classify(&self, query: &[f64]) -> Result<(usize, Vec<f64>)> {
        self.check_length(query.len())?;
        let q = self.spec.prepare(query)?;
        let candidates = self.prepared.iter().enumerate().map(|(j, p)| (j, p.as_slice()));
        let (j, _) = nearest_neighbour(&self.spec, &q, candidates).ok_or(Error::EmptyTrainingSet)?;
        let class = self.train.targets()[j];
        let mut p = vec![0.0; self.train.n_classes()];
        p[class] = 1.0;
        Ok((class, p))
    }
}

impl Model for NnModel {
    fn class_labels(&self) -> &[String] {
        self.train.class_labels()
    }

    fn series_length(&self) -> usize {
        self.train.series_length()
    }

    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>> {
        Ok(self.nn1_classify(series)?.1)
    }
}

impl Classifier for NnConfig {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>> {
        Ok(Box::new(NnModel::new(Arc::new(train.clone()), self.spec)?))
    }

    fn describe(&self) -> String {
        self.spec.to_string()
    }
}
