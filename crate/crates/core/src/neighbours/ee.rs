use std::sync::Arc;

use super::nn::NnModel;
use super::tune::{loocv_accuracy, loocv_tune};
use crate::classifier::{Classifier, Model};
use crate::data::TimeSeriesDataset;
use crate::distance::Constituent;
use crate::error::{Error, Result};
use crate::{par, seed};

#[derive(Debug, Clone, PartialEq)]
pub struct EeConfig {
    pub proportion_of_param_options: f64,
    pub proportion_of_train_in_param_finding: f64,
    pub constituents: Vec<Constituent>,
    pub seed: u64,
}

impl Default for EeConfig {
    fn default() -> Self {
        Self {
            proportion_of_param_options: 1.0,
            proportion_of_train_in_param_finding: 1.0,
            constituents: Constituent::ALL.to_vec(),
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EeConstituent {
    pub constituent: Constituent,
    pub cv_accuracy: f64,
    pub nn: NnModel,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EeModel {
    pub constituents: Vec<EeConstituent>,
}

/// Tunes (or, for fixed measures, scores) each constituent independently.
/// A constituent's random draws depend only on the seed and its identity.
pub fn ee_fit(train: &TimeSeriesDataset, config: &EeConfig) -> Result<EeModel> {
    if train.len() < 2 {
        return Err(Error::TooFewSamples(train.len()));
    }
    if config.constituents.is_empty() {
        return Err(Error::InvalidConfig("no constituents".into()));
    }
    let train = Arc::new(train.clone());
    let sigma = train.pooled_std();
    let n = train.series_length();
    let all: Vec<usize> = (0..train.len()).collect();
    let constituents = par::try_map_range(config.constituents.len(), |k| -> Result<EeConstituent> {
        let c = config.constituents[k];
        let id = Constituent::ALL.iter().position(|&x| x == c).expect("listed constituent");
        let (spec, cv_accuracy) = match c.grid(sigma, n) {
            None => {
                let spec = c.fixed_spec().expect("untunable constituents have a fixed spec");
                let prepared: Vec<Vec<f64>> = (0..train.len())
                    .map(|i| Ok(spec.prepare(train.series(i))?.into_owned()))
                    .collect::<Result<_>>()?;
                (spec, loocv_accuracy(&spec, &prepared, train.targets(), &all))
            }
            Some(grid) => {
                let mut rng = seed::child_rng(config.seed, id as u64);
                let r = loocv_tune(
                    &train,
                    &grid?,
                    config.proportion_of_param_options,
                    config.proportion_of_train_in_param_finding,
                    &mut rng,
                )?;
                (r.spec, r.cv_accuracy)
            }
        };
        Ok(EeConstituent {
            constituent: c,
            cv_accuracy,
            nn: NnModel::new(train.clone(), spec)?,
        })
    })?;
    Ok(EeModel { constituents })
}

impl Model for EeModel {
    fn class_labels(&self) -> &[String] {
        self.constituents[0].nn.class_labels()
    }

    fn series_length(&self) -> usize {
        self.constituents[0].nn.series_length()
    }

    /// Each constituent votes for its 1NN class with weight `cv_accuracy`.
    /// If every weight is zero the votes count equally.
    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>> {
        self.check_length(series.len())?;
        let equal = self.constituents.iter().all(|c| c.cv_accuracy <= 0.0);
        let mut votes = vec![0.0; self.class_labels().len()];
        for c in &self.constituents {
            let (class, _) = c.nn.nn1_classify(series)?;
            votes[class] += if equal { 1.0 } else { c.cv_accuracy };
        }
        let total: f64 = votes.iter().sum();
        votes.iter_mut().for_each(|v| *v /= total);
        Ok(votes)
    }
}

impl Classifier for EeConfig {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>> {
        Ok(Box::new(ee_fit(train, self)?))
    }

    fn describe(&self) -> String {
        format!(
            "proportion_of_param_options={},proportion_of_train_in_param_finding={},seed={}",
            self.proportion_of_param_options, self.proportion_of_train_in_param_finding, self.seed
        )
    }
}
