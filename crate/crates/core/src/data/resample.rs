use rand::seq::SliceRandom;

use super::{Case, TimeSeriesDataset};
use crate::error::{Error, Result};
use crate::seed;

/// A train/test split produced by [`stratified_resample`].
#[derive(Debug, Clone, PartialEq)]
pub struct ResamplePair {
    pub train: TimeSeriesDataset,
    pub test: TimeSeriesDataset,
    pub resample_id: u64,
    pub seed: u64,
}

/// Re-splits the pooled train and test cases, keeping the per-class train
/// counts of the original split. Resample 0 is the original split.
pub fn stratified_resample(
    original_train: &TimeSeriesDataset,
    original_test: &TimeSeriesDataset,
    resample_id: u64,
    seed: u64,
) -> Result<ResamplePair> {
    if original_train.class_labels() != original_test.class_labels() {
        return Err(Error::IncompatibleDatasets("class labels differ".into()));
    }
    if original_train.series_length() != original_test.series_length() {
        return Err(Error::IncompatibleDatasets(format!(
            "series lengths differ ({} vs {})",
            original_train.series_length(),
            original_test.series_length()
        )));
    }
    if resample_id == 0 {
        return Ok(ResamplePair {
            train: original_train.clone(),
            test: original_test.clone(),
            resample_id,
            seed,
        });
    }

    let n_classes = original_train.n_classes();
    let train_counts = original_train.class_counts();
    let mut pools: Vec<Vec<&Case>> = vec![Vec::new(); n_classes];
    for d in [original_train, original_test] {
        for (case, &t) in d.cases().iter().zip(d.targets()) {
            pools[t].push(case);
        }
    }

    let mut rng = seed::rng(seed::splitmix64(seed ^ resample_id));
    let mut train = Vec::with_capacity(original_train.len());
    let mut test = Vec::with_capacity(original_test.len());
    for (pool, &k) in pools.iter_mut().zip(&train_counts) {
        pool.shuffle(&mut rng);
        train.extend(pool[..k].iter().map(|c| (*c).clone()));
        test.extend(pool[k..].iter().map(|c| (*c).clone()));
    }
    Ok(ResamplePair {
        train: original_train.with_cases(train)?,
        test: original_test.with_cases(test)?,
        resample_id,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy(name: &str, counts: &[(usize, &str)], offset: f64) -> TimeSeriesDataset {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        let mut k = 0.0;
        for &(n, l) in counts {
            for _ in 0..n {
                rows.push(vec![offset + k, k]);
                labels.push(l);
                k += 1.0;
            }
        }
        let d = TimeSeriesDataset::from_rows(name, rows, &labels).unwrap();
        d.with_cases(d.cases().to_vec()).unwrap()
    }

    #[test]
    fn resample_zero_is_identity() {
        let tr = toy("p", &[(10, "a"), (5, "b")], 0.0);
        let te = toy("p", &[(4, "a"), (6, "b")], 100.0);
        let pair = stratified_resample(&tr, &te, 0, 3).unwrap();
        assert_eq!(pair.train, tr);
        assert_eq!(pair.test, te);
    }

    #[test]
    fn counts_preserved_and_deterministic() {
        let tr = toy("p", &[(10, "a"), (5, "b")], 0.0);
        let te = toy("p", &[(4, "a"), (6, "b")], 100.0);
        for id in 1..6 {
            let p = stratified_resample(&tr, &te, id, 7).unwrap();
            assert_eq!(p.train.class_counts(), vec![10, 5]);
            assert_eq!(p.test.class_counts(), vec![4, 6]);
        }
        let a = stratified_resample(&tr, &te, 3, 7).unwrap();
        let b = stratified_resample(&tr, &te, 3, 7).unwrap();
        assert_eq!(a, b);
        let c = stratified_resample(&tr, &te, 4, 7).unwrap();
        assert_ne!(a.train, c.train);
    }

    #[test]
    fn incompatible_inputs() {
        let tr = toy("p", &[(2, "a"), (2, "b")], 0.0);
        let te = toy("p", &[(2, "b"), (2, "a")], 0.0);
        assert!(matches!(
            stratified_resample(&tr, &te, 1, 0),
            Err(Error::IncompatibleDatasets(_))
        ));
    }
}
