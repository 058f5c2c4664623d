use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;

use super::individual::{fit_from_cache, BossIndividualModel};
use super::sfa::{SfaParams, WindowCache, MAX_FREQUENCY};
use crate::classifier::{Classifier, Model};
use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};
use crate::{par, seed};

const MIN_WINDOW: usize = 10;
const WORD_LENGTHS: [usize; 5] = [16, 14, 12, 10, 8];

#[derive(Debug, Clone, PartialEq)]
pub struct BossEnsembleConfig {
    /// `false`: full grid with accuracy-relative retention (BOSS).
    /// `true`: sampled parameters, best `max_ensemble_size` kept (cBOSS).
    pub randomised_ensemble: bool,
    pub n_parameter_samples: usize,
    pub max_ensemble_size: usize,
    /// Wall-clock budget that replaces `n_parameter_samples` in randomised mode.
    pub time_limit_minutes: Option<f64>,
    pub retention_threshold: f64,
    pub seed: u64,
}

impl Default for BossEnsembleConfig {
    fn default() -> Self {
        Self {
            randomised_ensemble: false,
            n_parameter_samples: 250,
            max_ensemble_size: 50,
            time_limit_minutes: None,
            retention_threshold: 0.92,
            seed: 0,
        }
    }
}

impl BossEnsembleConfig {
    pub fn boss(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn cboss(seed: u64) -> Self {
        Self {
            randomised_ensemble: true,
            seed,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.retention_threshold > 0.0 && self.retention_threshold <= 1.0) {
            return Err(Error::InvalidConfig("retention_threshold must lie in (0, 1]".into()));
        }
        if self.n_parameter_samples == 0 || self.max_ensemble_size == 0 {
            return Err(Error::InvalidConfig("sample and ensemble sizes must be positive".into()));
        }
        if let Some(t) = self.time_limit_minutes {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidConfig("time limit must be positive".into()));
            }
        }
        Ok(())
    }
}

/// Timing and work counters collected while building an ensemble.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct BuildTelemetry {
    pub individuals_evaluated: usize,
    pub build_time: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BossEnsembleModel {
    pub members: Vec<BossIndividualModel>,
    pub weights: Vec<f64>,
    pub class_labels: Vec<String>,
    pub series_length: usize,
    pub telemetry: BuildTelemetry,
}

/// Ten window lengths evenly spaced over `[10, series_length]`, each paired
/// with every word length that fits in it and both normalisation settings.
pub fn boss_parameter_space(series_length: usize) -> Result<Vec<SfaParams>> {
    if series_length < MIN_WINDOW {
        return Err(Error::NoViableParameters(series_length));
    }
    let span = (series_length - MIN_WINDOW) as f64;
    let mut windows: Vec<usize> = (0..10)
        .map(|i| MIN_WINDOW + (i as f64 * span / 9.0).round() as usize)
        .collect();
    windows.dedup();
    let mut space = Vec::new();
    for &w in &windows {
        for &l in WORD_LENGTHS.iter().filter(|&&l| l <= w) {
            for norm in [true, false] {
                space.push(SfaParams::new(w, l, norm));
            }
        }
    }
    Ok(space)
}

/// Indices whose accuracy is at least `threshold` times the best.
pub fn retain_by_accuracy(accuracies: &[f64], threshold: f64) -> Vec<usize> {
    let best = accuracies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let bar = threshold * best - 1e-12;
    (0..accuracies.len()).filter(|&i| accuracies[i] >= bar).collect()
}

fn build_caches(train: &TimeSeriesDataset, params: &[SfaParams]) -> Result<BTreeMap<usize, WindowCache>> {
    let mut windows: Vec<usize> = params.iter().map(|p| p.window_length).collect();
    windows.sort_unstable();
    windows.dedup();
    let caches = par::try_map_range(windows.len(), |i| WindowCache::build(train, windows[i], MAX_FREQUENCY + 1))?;
    Ok(windows.into_iter().zip(caches).collect())
}

fn fit_all(train: &TimeSeriesDataset, params: &[SfaParams]) -> Result<Vec<BossIndividualModel>> {
    let caches = build_caches(train, params)?;
    par::try_map_range(params.len(), |i| fit_from_cache(train, &caches[&params[i].window_length], &params[i]))
}

/// Builds serially in the given order until the budget runs out. The check
/// happens between builds, so the overrun is at most one individual.
fn fit_contracted(train: &TimeSeriesDataset, params: &[SfaParams], budget: Duration) -> Result<Vec<BossIndividualModel>> {
    let start = Instant::now();
    let mut caches: BTreeMap<usize, WindowCache> = BTreeMap::new();
    let mut out = Vec::new();
    for p in params {
        if !out.is_empty() && start.elapsed() >= budget {
            break;
        }
        if !caches.contains_key(&p.window_length) {
            caches.insert(p.window_length, WindowCache::build(train, p.window_length, MAX_FREQUENCY + 1)?);
        }
        out.push(fit_from_cache(train, &caches[&p.window_length], p)?);
    }
    Ok(out)
}

pub fn boss_ensemble_fit(train: &TimeSeriesDataset, config: &BossEnsembleConfig) -> Result<BossEnsembleModel> {
    config.validate()?;
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let start = Instant::now();
    let mut space = boss_parameter_space(train.series_length())?;
    let (members, weights, evaluated) = if config.randomised_ensemble {
        space.shuffle(&mut seed::rng(config.seed));
        let evaluated = match config.time_limit_minutes {
            Some(minutes) => fit_contracted(train, &space, Duration::from_secs_f64(minutes * 60.0))?,
            None => {
                space.truncate(config.n_parameter_samples);
                fit_all(train, &space)?
            }
        };
        let n = evaluated.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| evaluated[b].train_accuracy.total_cmp(&evaluated[a].train_accuracy));
        order.truncate(config.max_ensemble_size);
        order.sort_unstable();
        let mut slots: Vec<Option<BossIndividualModel>> = evaluated.into_iter().map(Some).collect();
        let members: Vec<_> = order.iter().map(|&i| slots[i].take().expect("index kept once")).collect();
        let weights = members.iter().map(|m| m.train_accuracy.powi(4)).collect();
        (members, weights, n)
    } else {
        let evaluated = fit_all(train, &space)?;
        let n = evaluated.len();
        let accs: Vec<f64> = evaluated.iter().map(|m| m.train_accuracy).collect();
        let keep = retain_by_accuracy(&accs, config.retention_threshold);
        let members: Vec<_> = evaluated
            .into_iter()
            .enumerate()
            .filter(|(i, _)| keep.binary_search(i).is_ok())
            .map(|(_, m)| m)
            .collect();
        let weights = vec![1.0; members.len()];
        (members, weights, n)
    };
    Ok(BossEnsembleModel {
        members,
        weights,
        class_labels: train.class_labels().to_vec(),
        series_length: train.series_length(),
        telemetry: BuildTelemetry {
            individuals_evaluated: evaluated,
            build_time: start.elapsed(),
        },
    })
}

impl Model for BossEnsembleModel {
    fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    fn series_length(&self) -> usize {
        self.series_length
    }

    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>> {
        self.check_length(series.len())?;
        let total: f64 = self.weights.iter().sum();
        let equal = total <= 0.0;
        let mut votes = vec![0.0; self.class_labels.len()];
        for (m, &w) in self.members.iter().zip(&self.weights) {
            votes[m.predict_one(series)?] += if equal { 1.0 } else { w };
        }
        let sum: f64 = votes.iter().sum();
        votes.iter_mut().for_each(|v| *v /= sum);
        Ok(votes)
    }
}

impl Classifier for BossEnsembleConfig {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>> {
        Ok(Box::new(boss_ensemble_fit(train, self)?))
    }

    fn describe(&self) -> String {
        let mut s = format!("randomised={},seed={}", self.randomised_ensemble, self.seed);
        if self.randomised_ensemble {
            match self.time_limit_minutes {
                Some(t) => s += &format!(",time_limit_minutes={t}"),
                None => s += &format!(",n_parameter_samples={}", self.n_parameter_samples),
            }
            s += &format!(",max_ensemble_size={}", self.max_ensemble_size);
        } else {
            s += &format!(",retention_threshold={}", self.retention_threshold);
        }
        s
    }
}
