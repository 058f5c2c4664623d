use rand::Rng as _;

use super::cart::fit_on_rows;
use super::{DecisionTree, FeatureMatrix, MaxFeatures, TreeConfig};
use crate::error::{Error, Result};
use crate::{par, seed};

/// Bagged ensemble of CART trees.
#[derive(Debug, Clone, PartialEq)]
pub struct ForestModel {
    pub trees: Vec<DecisionTree>,
    pub n_classes: usize,
}

impl ForestModel {
    /// Mean of the tree distributions.
    pub fn predict_proba(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.n_classes];
        for t in &self.trees {
            for (o, p) in out.iter_mut().zip(t.predict_proba(x)?) {
                *o += p;
            }
        }
        let k = self.trees.len() as f64;
        out.iter_mut().for_each(|v| *v /= k);
        Ok(out)
    }
}

/// Fits `n_trees` trees, each on a bootstrap sample with `sqrt` feature
/// sampling. Tree `i` draws from a generator seeded by `(config.seed, i)`.
pub fn fit_random_forest(
    x: &FeatureMatrix,
    y: &[usize],
    n_classes: usize,
    n_trees: usize,
    config: &TreeConfig,
) -> Result<ForestModel> {
    if x.n_rows() == 0 || y.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if n_trees == 0 {
        return Err(Error::InvalidConfig("n_trees must be positive".into()));
    }
    let n = x.n_rows();
    let trees = par::try_map_range(n_trees, |i| {
        let mut rng = seed::child_rng(config.seed, i as u64);
        let rows: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
        let cfg = TreeConfig {
            max_features: MaxFeatures::Sqrt,
            seed: rng.random(),
            ..*config
        };
        fit_on_rows(x, y, n_classes, &cfg, rows)
    })?;
    Ok(ForestModel { trees, n_classes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed;

    fn blob() -> (FeatureMatrix, Vec<usize>) {
        // two clouds separated by a margin of at least 1 along the first axis
        let mut rng = seed::rng(11);
        let mut rows = Vec::new();
        let mut y = Vec::new();
        for i in 0..40 {
            let c = i % 2;
            let x0 = if c == 0 { -0.5 - rng.random::<f64>() * 2.0 } else { 0.5 + rng.random::<f64>() * 2.0 };
            rows.push(vec![x0, rng.random::<f64>() * 4.0 - 2.0, rng.random::<f64>() * 4.0 - 2.0]);
            y.push(c);
        }
        (FeatureMatrix::from_rows(&rows).unwrap(), y)
    }

    #[test]
    fn pure_class_forest() {
        let x = FeatureMatrix::from_rows(&[vec![1.0], vec![2.0]]).unwrap();
        let f = fit_random_forest(&x, &[1, 1], 2, 1, &TreeConfig::default()).unwrap();
        assert_eq!(f.predict_proba(&[-100.0]).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn separable_blob_is_memorized() {
        let (x, y) = blob();
        let f = fit_random_forest(&x, &y, 2, 50, &TreeConfig { seed: 5, ..TreeConfig::default() }).unwrap();
        for i in 0..x.n_rows() {
            let p = f.predict_proba(x.row(i)).unwrap();
            assert_eq!(super::super::argmax(&p), y[i]);
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let (x, y) = blob();
        let cfg = TreeConfig { seed: 9, ..TreeConfig::default() };
        let a = fit_random_forest(&x, &y, 2, 10, &cfg).unwrap();
        let b = fit_random_forest(&x, &y, 2, 10, &cfg).unwrap();
        assert_eq!(a, b);
        // tree i depends only on (seed, i)
        let c = fit_random_forest(&x, &y, 2, 5, &cfg).unwrap();
        assert_eq!(a.trees[..5], c.trees[..]);
    }

    #[test]
    fn average_is_order_free() {
        let (x, y) = blob();
        let mut f = fit_random_forest(&x, &y, 2, 8, &TreeConfig::default()).unwrap();
        let p = f.predict_proba(x.row(3)).unwrap();
        f.trees.reverse();
        let q = f.predict_proba(x.row(3)).unwrap();
        for (a, b) in p.iter().zip(q) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
