use rand::Rng as _;

use super::{average_members, sample_intervals, Interval, IntervalMember};
use crate::classifier::{Classifier, Model};
use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};
use crate::kernels::{acf_coefs, power_spectrum};
use crate::tree::{fit_decision_tree, FeatureMatrix, TreeConfig};
use crate::{par, seed};

#[derive(Debug, Clone, PartialEq)]
pub struct RiseConfig {
    pub n_trees: usize,
    pub min_interval_length: usize,
    pub acf_maxlag: usize,
    pub seed: u64,
}

impl Default for RiseConfig {
    fn default() -> Self {
        Self {
            n_trees: 50,
            min_interval_length: 5,
            acf_maxlag: 100,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RiseModel {
    pub members: Vec<IntervalMember>,
    pub class_labels: Vec<String>,
    pub series_length: usize,
    pub acf_maxlag: usize,
}

/// Autocorrelations followed by the power spectrum of `x`:
/// `min(len - 1, maxlag) + len / 2` values.
pub fn rise_features(x: &[f64], acf_maxlag: usize) -> Result<Vec<f64>> {
    let mut row = acf_coefs(x, acf_maxlag)?;
    row.extend(power_spectrum(x)?);
    Ok(row)
}

/// Member 0 reads the whole series; every other member one random interval.
pub fn rise_fit(train: &TimeSeriesDataset, config: &RiseConfig) -> Result<RiseModel> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if config.n_trees == 0 {
        return Err(Error::InvalidConfig("n_trees must be positive".into()));
    }
    if config.min_interval_length < 2 {
        return Err(Error::InvalidConfig("RISE intervals need at least 2 points".into()));
    }
    let n = train.series_length();
    if n < config.min_interval_length {
        return Err(Error::IntervalInfeasible {
            series_length: n,
            min_length: config.min_interval_length,
        });
    }
    let members = par::try_map_range(config.n_trees, |i| -> Result<IntervalMember> {
        let mut rng = seed::child_rng(config.seed, i as u64);
        let interval = if i == 0 {
            Interval { start: 0, length: n }
        } else {
            sample_intervals(n, 1, config.min_interval_length, &mut rng)?[0]
        };
        let rows = (0..train.len())
            .map(|c| rise_features(interval.slice(train.series(c)), config.acf_maxlag))
            .collect::<Result<Vec<_>>>()?;
        let x = FeatureMatrix::from_rows(&rows)?;
        let cfg = TreeConfig {
            seed: rng.random(),
            ..TreeConfig::default()
        };
        let tree = fit_decision_tree(&x, train.targets(), train.n_classes(), &cfg)?;
        Ok(IntervalMember {
            intervals: vec![interval],
            tree,
        })
    })?;
    Ok(RiseModel {
        members,
        class_labels: train.class_labels().to_vec(),
        series_length: n,
        acf_maxlag: config.acf_maxlag,
    })
}

impl Model for RiseModel {
    fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    fn series_length(&self) -> usize {
        self.series_length
    }

    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>> {
        self.check_length(series.len())?;
        average_members(&self.members, self.class_labels.len(), series, |m, x| {
            rise_features(m.intervals[0].slice(x), self.acf_maxlag)
        })
    }
}

impl Classifier for RiseConfig {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>> {
        Ok(Box::new(rise_fit(train, self)?))
    }

    fn describe(&self) -> String {
        format!(
            "n_trees={},min_interval_length={},acf_maxlag={},seed={}",
            self.n_trees, self.min_interval_length, self.acf_maxlag, self.seed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::Case;

    #[test]
    fn feature_length() {
        for m in [5usize, 6, 50, 150, 300] {
            let x: Vec<f64> = (0..m).map(|t| (t as f64).sin()).collect();
            assert_eq!(rise_features(&x, 100).unwrap().len(), (m - 1).min(100) + m / 2);
        }
    }

    #[test]
    fn constant_dataset_fits() {
        let cases = (0..10)
            .map(|i| Case {
                values: vec![3.0; 16],
                label: (i % 2).to_string(),
            })
            .collect();
        let d = TimeSeriesDataset::new("c", vec!["0".into(), "1".into()], cases, None).unwrap();
        let m = rise_fit(&d, &RiseConfig { n_trees: 5, ..RiseConfig::default() }).unwrap();
        let p = m.predict_proba(&d).unwrap();
        assert!(p.iter().all(|r| r.iter().all(|v| v.is_finite())));
        let f = rise_features(d.series(0), 100).unwrap();
        assert!(f[..15].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn first_member_reads_whole_series() {
        let cases = (0..6)
            .map(|i| Case {
                values: (0..20).map(|t| ((t * (i + 1)) as f64).cos()).collect(),
                label: (i % 2).to_string(),
            })
            .collect();
        let d = TimeSeriesDataset::new("c", vec!["0".into(), "1".into()], cases, None).unwrap();
        let m = rise_fit(&d, &RiseConfig { n_trees: 3, ..RiseConfig::default() }).unwrap();
        assert_eq!(m.members[0].intervals, vec![Interval { start: 0, length: 20 }]);
        assert!(m.members.iter().all(|mem| mem.intervals[0].length >= 5));
    }
}
