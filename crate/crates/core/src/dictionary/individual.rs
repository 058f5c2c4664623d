use super::histogram::{boss_distance_bounded, words_of, WordHistogram};
use super::sfa::{Breakpoints, SfaParams, Twiddles, WindowCache};
use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};

/// A 1NN classifier over BOSS histograms for one parameter setting.
#[derive(Debug, Clone, PartialEq)]
pub struct BossIndividualModel {
    pub params: SfaParams,
    pub breakpoints: Breakpoints,
    pub train_histograms: Vec<WordHistogram>,
    pub train_targets: Vec<usize>,
    pub train_accuracy: f64,
    twiddles: Twiddles,
}

/// Index of the histogram nearest to `query` under BOSS distance, skipping
/// `exclude`; ties go to the earlier index.
fn nearest(query: &WordHistogram, candidates: &[WordHistogram], exclude: Option<usize>) -> Option<usize> {
    let mut best = f64::INFINITY;
    let mut best_idx = None;
    for (j, h) in candidates.iter().enumerate() {
        if Some(j) == exclude {
            continue;
        }
        let d = boss_distance_bounded(query, h, best);
        if d < best || best_idx.is_none() {
            best = d;
            best_idx = Some(j);
        }
    }
    best_idx
}

/// Leave-one-out 1NN accuracy over `histograms`; 0 for fewer than two cases.
pub fn loo_accuracy(histograms: &[WordHistogram], targets: &[usize]) -> f64 {
    if histograms.len() < 2 {
        return 0.0;
    }
    let correct = (0..histograms.len())
        .filter(|&i| nearest(&histograms[i], histograms, Some(i)).is_some_and(|j| targets[j] == targets[i]))
        .count();
    correct as f64 / histograms.len() as f64
}

pub(crate) fn fit_from_cache(train: &TimeSeriesDataset, cache: &WindowCache, params: &SfaParams) -> Result<BossIndividualModel> {
    params.validate()?;
    let breakpoints = cache.breakpoints(params);
    let train_histograms = (0..train.len())
        .map(|c| Ok(WordHistogram::from_words(&cache.words(c, params, &breakpoints)?)))
        .collect::<Result<Vec<_>>>()?;
    let train_accuracy = loo_accuracy(&train_histograms, train.targets());
    Ok(BossIndividualModel {
        params: *params,
        breakpoints,
        train_histograms,
        train_targets: train.targets().to_vec(),
        train_accuracy,
        twiddles: Twiddles::for_params(params),
    })
}

/// Fits breakpoints, builds the training histograms and scores them by
/// leave-one-out 1NN.
pub fn boss_individual_fit(train: &TimeSeriesDataset, params: &SfaParams) -> Result<BossIndividualModel> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    params.validate()?;
    let n_freq = usize::from(params.normalize) + params.word_length.div_ceil(2);
    let cache = WindowCache::build(train, params.window_length, n_freq)?;
    fit_from_cache(train, &cache, params)
}

impl BossIndividualModel {
    pub fn histogram(&self, series: &[f64]) -> Result<WordHistogram> {
        let words = words_of(series, &self.params, &self.breakpoints, &self.twiddles)?;
        Ok(WordHistogram::from_words(&words))
    }

    /// Class index of the nearest training case.
    pub fn predict_one(&self, series: &[f64]) -> Result<usize> {
        let h = self.histogram(series)?;
        let j = nearest(&h, &self.train_histograms, None).ok_or(Error::EmptyTrainingSet)?;
        Ok(self.train_targets[j])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Case;

    fn dataset(rows: Vec<(Vec<f64>, &str)>) -> TimeSeriesDataset {
        let cases = rows
            .into_iter()
            .map(|(values, l)| Case {
                values,
                label: l.to_string(),
            })
            .collect();
        TimeSeriesDataset::new("d", vec!["a".into(), "b".into()], cases, None).unwrap()
    }

    fn series(seed: usize) -> Vec<f64> {
        (0..24).map(|t| ((t * (seed + 1)) as f64 * 0.7).sin() + (t % (seed + 2)) as f64).collect()
    }

    #[test]
    fn duplicated_cases_score_perfectly() {
        let mut rows = Vec::new();
        for i in 0..5 {
            let l = if i % 2 == 0 { "a" } else { "b" };
            rows.push((series(i), l));
            rows.push((series(i), l));
        }
        let m = boss_individual_fit(&dataset(rows), &SfaParams::new(8, 4, true)).unwrap();
        assert_eq!(m.train_accuracy, 1.0);
    }

    #[test]
    fn two_cases_cross_assign() {
        let d = dataset(vec![(series(0), "a"), (series(1), "b")]);
        let m = boss_individual_fit(&d, &SfaParams::new(8, 4, false)).unwrap();
        assert_eq!(m.train_accuracy, 0.0);
    }

    #[test]
    fn cached_words_match_direct_histograms() {
        let d = dataset((0..6).map(|i| (series(i), if i < 3 { "a" } else { "b" })).collect());
        for p in [SfaParams::new(10, 8, true), SfaParams::new(7, 6, false)] {
            let m = boss_individual_fit(&d, &p).unwrap();
            for c in 0..d.len() {
                assert_eq!(m.histogram(d.series(c)).unwrap(), m.train_histograms[c]);
            }
            assert_eq!(m.predict_one(d.series(4)).unwrap(), 1);
        }
    }

    #[test]
    fn window_too_long() {
        let d = dataset(vec![(series(0), "a"), (series(1), "b")]);
        assert!(matches!(
            boss_individual_fit(&d, &SfaParams::new(30, 4, true)),
            Err(Error::WindowTooLong { window: 30, series: 24 })
        ));
    }
}
