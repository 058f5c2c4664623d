use rand::Rng as _;

use super::{average_members, sample_intervals, Interval, IntervalMember};
use crate::classifier::{Classifier, Model};
use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};
use crate::kernels::interval_summary;
use crate::tree::{fit_decision_tree, FeatureMatrix, TreeConfig};
use crate::{par, seed};

/// How many intervals each member draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalCount {
    /// `ceil(sqrt(series_length))`
    Sqrt,
    Fixed(usize),
}

impl IntervalCount {
    pub fn resolve(self, series_length: usize) -> usize {
        match self {
            IntervalCount::Sqrt => (series_length as f64).sqrt().ceil() as usize,
            IntervalCount::Fixed(k) => k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TsfConfig {
    pub n_trees: usize,
    pub n_intervals: IntervalCount,
    pub min_interval_length: usize,
    pub seed: u64,
}

impl Default for TsfConfig {
    fn default() -> Self {
        Self {
            n_trees: 100,
            n_intervals: IntervalCount::Sqrt,
            min_interval_length: 3,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TsfModel {
    pub members: Vec<IntervalMember>,
    pub class_labels: Vec<String>,
    pub series_length: usize,
}

/// `[mean, std, slope]` for each interval, in interval order.
fn summary_features(series: &[f64], intervals: &[Interval]) -> Result<Vec<f64>> {
    let mut row = Vec::with_capacity(3 * intervals.len());
    for iv in intervals {
        let f = interval_summary(iv.slice(series))?;
        row.extend([f.mean, f.std, f.slope]);
    }
    Ok(row)
}

pub fn tsf_fit(train: &TimeSeriesDataset, config: &TsfConfig) -> Result<TsfModel> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if config.n_trees == 0 {
        return Err(Error::InvalidConfig("n_trees must be positive".into()));
    }
    if config.min_interval_length < 2 {
        return Err(Error::InvalidConfig("TSF intervals need at least 2 points".into()));
    }
    let n = train.series_length();
    let k = config.n_intervals.resolve(n).max(1);
    let members = par::try_map_range(config.n_trees, |i| -> Result<IntervalMember> {
        let mut rng = seed::child_rng(config.seed, i as u64);
        let intervals = sample_intervals(n, k, config.min_interval_length, &mut rng)?;
        let mut x = FeatureMatrix::with_capacity(train.len(), 3 * k);
        for c in 0..train.len() {
            x.push_row(&summary_features(train.series(c), &intervals)?)?;
        }
        let cfg = TreeConfig {
            seed: rng.random(),
            ..TreeConfig::default()
        };
        let tree = fit_decision_tree(&x, train.targets(), train.n_classes(), &cfg)?;
        Ok(IntervalMember { intervals, tree })
    })?;
    Ok(TsfModel {
        members,
        class_labels: train.class_labels().to_vec(),
        series_length: n,
    })
}

impl Model for TsfModel {
    fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    fn series_length(&self) -> usize {
        self.series_length
    }

    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>> {
        self.check_length(series.len())?;
        average_members(&self.members, self.class_labels.len(), series, |m, x| {
            summary_features(x, &m.intervals)
        })
    }
}

impl Classifier for TsfConfig {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>> {
        Ok(Box::new(tsf_fit(train, self)?))
    }

    fn describe(&self) -> String {
        format!(
            "n_trees={},n_intervals={},min_interval_length={},seed={}",
            self.n_trees,
            match self.n_intervals {
                IntervalCount::Sqrt => "sqrt".to_string(),
                IntervalCount::Fixed(k) => k.to_string(),
            },
            self.min_interval_length,
            self.seed
        )
    }
}
