//! Interval ensembles: Time Series Forest, RISE, and a generic
//! segment → feature-union → tree pipeline that can express both.

mod composed;
mod rise;
mod tsf;

pub use composed::{composed_fit, ComposedModel, ComposedPipelineSpec, FeatureFunction, Segmenter};
pub use rise::{rise_features, rise_fit, RiseConfig, RiseModel};
pub use tsf::{tsf_fit, IntervalCount, TsfConfig, TsfModel};

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::seed::Rng;
use crate::tree::DecisionTree;

/// A contiguous range `[start, start + length)` of a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub start: usize,
    pub length: usize,
}

impl Interval {
    pub fn slice<'a>(&self, x: &'a [f64]) -> &'a [f64] {
        &x[self.start..self.start + self.length]
    }
}

/// Draws `how_many` intervals: start uniform in `[0, n - min_length]`, then
/// length uniform in `[min_length, n - start]`.
pub fn sample_intervals(
    series_length: usize,
    how_many: usize,
    min_length: usize,
    rng: &mut Rng,
) -> Result<Vec<Interval>> {
    if min_length == 0 || min_length > series_length {
        return Err(Error::IntervalInfeasible {
            series_length,
            min_length,
        });
    }
    Ok((0..how_many)
        .map(|_| {
            let start = rng.random_range(0..=series_length - min_length);
            let length = rng.random_range(min_length..=series_length - start);
            Interval { start, length }
        })
        .collect())
}

/// One ensemble member: the intervals it reads and the tree fitted on them.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalMember {
    pub intervals: Vec<Interval>,
    pub tree: DecisionTree,
}

/// Averages member distributions for one series.
pub(crate) fn average_members<F>(members: &[IntervalMember], n_classes: usize, series: &[f64], features: F) -> Result<Vec<f64>>
where
    F: Fn(&IntervalMember, &[f64]) -> Result<Vec<f64>>,
{
    let mut out = vec![0.0; n_classes];
    for m in members {
        let row = features(m, series)?;
        for (o, p) in out.iter_mut().zip(m.tree.predict_proba(&row)?) {
            *o += p;
        }
    }
    let k = members.len() as f64;
    out.iter_mut().for_each(|v| *v /= k);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    #[test]
    fn forced_full_interval() {
        let mut rng = seed::rng(0);
        for _ in 0..20 {
            assert_eq!(
                sample_intervals(7, 1, 7, &mut rng).unwrap(),
                vec![Interval { start: 0, length: 7 }]
            );
        }
    }

    #[test]
    fn bounds_hold_over_many_draws() {
        let mut rng = seed::rng(1);
        let iv = sample_intervals(100, 10_000, 3, &mut rng).unwrap();
        assert!(iv.iter().all(|i| i.length >= 3 && i.start + i.length <= 100));
        assert!(iv.iter().any(|i| i.start == 97));
    }

    #[test]
    fn deterministic_and_infeasible() {
        let a = sample_intervals(50, 5, 3, &mut seed::rng(9)).unwrap();
        let b = sample_intervals(50, 5, 3, &mut seed::rng(9)).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            sample_intervals(4, 1, 5, &mut seed::rng(0)),
            Err(Error::IntervalInfeasible { .. })
        ));
    }
}
