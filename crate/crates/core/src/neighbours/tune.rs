use rand::seq::index::sample;
use rand::seq::SliceRandom;

use super::nn::nearest_neighbour;
use crate::data::TimeSeriesDataset;
use crate::distance::{DistanceSpec, ParameterGrid};
use crate::error::{Error, Result};
use crate::par;
use crate::seed::Rng;

/// Outcome of tuning one measure.
#[derive(Debug, Clone, PartialEq)]
pub struct TuneResult {
    pub spec: DistanceSpec,
    /// Position of the winner in the full grid.
    pub option_index: usize,
    /// Leave-one-out accuracy of the winner over the whole training set.
    pub cv_accuracy: f64,
    /// Every evaluated option as (grid index, accuracy over the held-out subset).
    pub scores: Vec<(usize, f64)>,
    /// Training cases that were held out while scoring options.
    pub held_out: Vec<usize>,
}

/// Fraction of `held_out` cases whose nearest other training case shares
/// their class. `prepared` holds every training series already prepared
/// for `spec`.
pub fn loocv_accuracy(spec: &DistanceSpec, prepared: &[Vec<f64>], targets: &[usize], held_out: &[usize]) -> f64 {
    if held_out.is_empty() {
        return 0.0;
    }
    let correct = held_out
        .iter()
        .filter(|&&i| {
            let others = prepared
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(j, p)| (j, p.as_slice()));
            nearest_neighbour(spec, &prepared[i], others).is_some_and(|(j, _)| targets[j] == targets[i])
        })
        .count();
    correct as f64 / held_out.len() as f64
}

/// `size` case indices, allocated across classes in proportion to their
/// counts (largest remainder, ties to the lower class) and drawn at random
/// within each class. Returned sorted.
pub fn stratified_subset(targets: &[usize], n_classes: usize, size: usize, rng: &mut Rng) -> Vec<usize> {
    let n = targets.len();
    if size >= n {
        return (0..n).collect();
    }
    let mut by_class = vec![Vec::new(); n_classes];
    for (i, &t) in targets.iter().enumerate() {
        by_class[t].push(i);
    }
    let mut quota: Vec<usize> = by_class.iter().map(|c| c.len() * size / n).collect();
    let mut remainders: Vec<(usize, usize)> = by_class.iter().enumerate().map(|(k, c)| (c.len() * size % n, k)).collect();
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let short = size - quota.iter().sum::<usize>();
    for &(_, k) in remainders.iter().take(short) {
        quota[k] += 1;
    }
    let mut out = Vec::with_capacity(size);
    for (members, q) in by_class.iter_mut().zip(quota) {
        members.shuffle(rng);
        out.extend_from_slice(&members[..q]);
    }
    out.sort_unstable();
    out
}

fn prepare_all(spec: &DistanceSpec, train: &TimeSeriesDataset) -> Result<Vec<Vec<f64>>> {
    (0..train.len())
        .map(|i| Ok(spec.prepare(train.series(i))?.into_owned()))
        .collect()
}

/// Leave-one-out 1NN tuning over a (possibly subsampled) grid. Options are
/// scored on a stratified subset of held-out cases, each classified against
/// all other training cases; accuracy ties go to the lower grid index.
pub fn loocv_tune(
    train: &TimeSeriesDataset,
    grid: &ParameterGrid,
    proportion_of_param_options: f64,
    proportion_of_train_in_param_finding: f64,
    rng: &mut Rng,
) -> Result<TuneResult> {
    if grid.is_empty() {
        return Err(Error::GridEmpty);
    }
    for p in [proportion_of_param_options, proportion_of_train_in_param_finding] {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::InvalidConfig(format!("proportion {p} outside (0, 1]")));
        }
    }
    let n = train.len();
    if n < 2 {
        return Err(Error::TooFewSamples(n));
    }
    let n_options = ((proportion_of_param_options * grid.len() as f64).ceil() as usize).clamp(1, grid.len());
    let options: Vec<usize> = if n_options == grid.len() {
        (0..grid.len()).collect()
    } else {
        let mut idx = sample(rng, grid.len(), n_options).into_vec();
        idx.sort_unstable();
        idx
    };
    let n_held = ((proportion_of_train_in_param_finding * n as f64).ceil() as usize).clamp(1, n);
    let held_out = stratified_subset(train.targets(), train.n_classes(), n_held, rng);

    // every option of a grid shares one measure, so one preparation serves all
    let prepared = prepare_all(&grid.options[0], train)?;
    let accs = par::map_range(options.len(), |k| {
        loocv_accuracy(&grid.options[options[k]], &prepared, train.targets(), &held_out)
    });
    let mut best = 0;
    for k in 1..accs.len() {
        if accs[k] > accs[best] {
            best = k;
        }
    }
    let option_index = options[best];
    let spec = grid.options[option_index];
    let cv_accuracy = if held_out.len() == n {
        accs[best]
    } else {
        let all: Vec<usize> = (0..n).collect();
        loocv_accuracy(&spec, &prepared, train.targets(), &all)
    };
    Ok(TuneResult {
        spec,
        option_index,
        cv_accuracy,
        scores: options.into_iter().zip(accs).collect(),
        held_out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    #[test]
    fn stratified_allocation() {
        let targets = [0, 0, 0, 0, 0, 0, 1, 1, 1, 2];
        let mut rng = seed::rng(0);
        let s = stratified_subset(&targets, 3, 5, &mut rng);
        assert_eq!(s.len(), 5);
        let count = |k| s.iter().filter(|&&i| targets[i] == k).count();
        // quotas 3, 1.5, 0.5: the half-remainder goes to class 1
        assert_eq!((count(0), count(1), count(2)), (3, 2, 0));
    }

    #[test]
    fn empty_grid() {
        let d = TimeSeriesDataset::from_rows("x", vec![vec![0.0, 1.0], vec![1.0, 0.0]], &["a", "b"]).unwrap();
        let grid = ParameterGrid {
            measure: crate::distance::Measure::Dtw,
            options: vec![],
        };
        assert_eq!(loocv_tune(&d, &grid, 1.0, 1.0, &mut seed::rng(0)), Err(Error::GridEmpty));
    }
}
