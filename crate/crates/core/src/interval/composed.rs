use rand::Rng as _;

use super::{average_members, sample_intervals, Interval, IntervalCount, IntervalMember};
use crate::classifier::{Classifier, Model};
use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};
use crate::kernels::{acf_coefs, interval_summary, power_spectrum};
use crate::tree::{fit_decision_tree, FeatureMatrix, TreeConfig};
use crate::{par, seed};

/// How each member chooses the parts of the series it reads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segmenter {
    RandomIntervals { count: IntervalCount, min_length: usize },
    SingleRandomInterval { min_length: usize },
}

/// A per-interval feature extractor. Outputs are concatenated in list order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureFunction {
    Mean,
    Std,
    Slope,
    Acf { maxlag: usize },
    PowerSpectrum,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComposedPipelineSpec {
    pub segmenter: Segmenter,
    pub feature_functions: Vec<FeatureFunction>,
    /// Template for every member's tree; the seed field is replaced per member.
    pub base_learner: TreeConfig,
    pub n_members: usize,
    pub seed: u64,
}

impl ComposedPipelineSpec {
    /// Random `sqrt` intervals summarised by mean, std and slope.
    pub fn tsf(n_members: usize, seed: u64) -> Self {
        Self {
            segmenter: Segmenter::RandomIntervals {
                count: IntervalCount::Sqrt,
                min_length: 3,
            },
            feature_functions: vec![FeatureFunction::Mean, FeatureFunction::Std, FeatureFunction::Slope],
            base_learner: TreeConfig::default(),
            n_members,
            seed,
        }
    }

    /// One random interval of at least 5 points, described by ACF and power spectrum.
    pub fn rise(n_members: usize, seed: u64) -> Self {
        Self {
            segmenter: Segmenter::SingleRandomInterval { min_length: 5 },
            feature_functions: vec![FeatureFunction::Acf { maxlag: 100 }, FeatureFunction::PowerSpectrum],
            base_learner: TreeConfig::default(),
            n_members,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.feature_functions.is_empty() {
            return Err(Error::InvalidConfig("feature_functions is empty".into()));
        }
        if self.n_members == 0 {
            return Err(Error::InvalidConfig("n_members must be positive".into()));
        }
        let min_length = match self.segmenter {
            Segmenter::RandomIntervals { min_length, .. } | Segmenter::SingleRandomInterval { min_length } => min_length,
        };
        if min_length < 2 {
            return Err(Error::InvalidConfig("intervals need at least 2 points".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComposedModel {
    pub members: Vec<IntervalMember>,
    pub feature_functions: Vec<FeatureFunction>,
    pub class_labels: Vec<String>,
    pub series_length: usize,
}

fn union_features(series: &[f64], intervals: &[Interval], functions: &[FeatureFunction]) -> Result<Vec<f64>> {
    let needs_summary = functions
        .iter()
        .any(|f| matches!(f, FeatureFunction::Mean | FeatureFunction::Std | FeatureFunction::Slope));
    let mut row = Vec::new();
    for iv in intervals {
        let x = iv.slice(series);
        let summary = if needs_summary { Some(interval_summary(x)?) } else { None };
        for f in functions {
            match (f, &summary) {
                (FeatureFunction::Mean, Some(s)) => row.push(s.mean),
                (FeatureFunction::Std, Some(s)) => row.push(s.std),
                (FeatureFunction::Slope, Some(s)) => row.push(s.slope),
                (FeatureFunction::Acf { maxlag }, _) => row.extend(acf_coefs(x, *maxlag)?),
                (FeatureFunction::PowerSpectrum, _) => row.extend(power_spectrum(x)?),
                _ => unreachable!("summary computed whenever a summary feature is requested"),
            }
        }
    }
    Ok(row)
}

/// Segment, extract the feature union, fit a tree; once per member.
pub fn composed_fit(train: &TimeSeriesDataset, spec: &ComposedPipelineSpec) -> Result<ComposedModel> {
    spec.validate()?;
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let n = train.series_length();
    let members = par::try_map_range(spec.n_members, |i| -> Result<IntervalMember> {
        let mut rng = seed::child_rng(spec.seed, i as u64);
        let intervals = match spec.segmenter {
            Segmenter::RandomIntervals { count, min_length } => {
                sample_intervals(n, count.resolve(n).max(1), min_length, &mut rng)?
            }
            Segmenter::SingleRandomInterval { min_length } => sample_intervals(n, 1, min_length, &mut rng)?,
        };
        let rows = (0..train.len())
            .map(|c| union_features(train.series(c), &intervals, &spec.feature_functions))
            .collect::<Result<Vec<_>>>()?;
        let cfg = TreeConfig {
            seed: rng.random(),
            ..spec.base_learner.clone()
        };
        let tree = fit_decision_tree(&FeatureMatrix::from_rows(&rows)?, train.targets(), train.n_classes(), &cfg)?;
        Ok(IntervalMember { intervals, tree })
    })?;
    Ok(ComposedModel {
        members,
        feature_functions: spec.feature_functions.clone(),
        class_labels: train.class_labels().to_vec(),
        series_length: n,
    })
}

impl Model for ComposedModel {
    fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    fn series_length(&self) -> usize {
        self.series_length
    }

    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>> {
        self.check_length(series.len())?;
        average_members(&self.members, self.class_labels.len(), series, |m, x| {
            union_features(x, &m.intervals, &self.feature_functions)
        })
    }
}

impl Classifier for ComposedPipelineSpec {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>> {
        Ok(Box::new(composed_fit(train, self)?))
    }

    fn describe(&self) -> String {
        format!(
            "segmenter={:?},features={:?},n_members={},seed={}",
            self.segmenter, self.feature_functions, self.n_members, self.seed
        )
    }
}
