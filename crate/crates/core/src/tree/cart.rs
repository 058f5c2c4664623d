use rand::seq::SliceRandom;

use super::FeatureMatrix;
use crate::error::{Error, Result};
use crate::seed::{self, Rng};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitCriterion {
    Gini,
    Entropy,
}

/// Number of candidate features examined at each node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxFeatures {
    All,
    Sqrt,
    Count(usize),
}

impl MaxFeatures {
    fn resolve(self, n_features: usize) -> usize {
        match self {
            MaxFeatures::All => n_features,
            MaxFeatures::Sqrt => ((n_features as f64).sqrt().floor() as usize).max(1),
            MaxFeatures::Count(k) => k.clamp(1, n_features.max(1)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TreeConfig {
    pub criterion: SplitCriterion,
    pub max_features: MaxFeatures,
    pub min_leaf_size: usize,
    pub seed: u64,
}

impl Default for TreeConfig {
    fn default() -> Self {
        Self {
            criterion: SplitCriterion::Gini,
            max_features: MaxFeatures::All,
            min_leaf_size: 1,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TreeNode {
    Internal {
        feature: usize,
        threshold: f64,
        left: Box<TreeNode>,
        right: Box<TreeNode>,
    },
    Leaf {
        distribution: Vec<f64>,
    },
}

impl TreeNode {
    /// Routes `x` to its leaf: values `<= threshold` go left.
    pub fn leaf_for(&self, x: &[f64]) -> &[f64] {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf { distribution } => return distribution,
                TreeNode::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                } => node = if x[*feature] <= *threshold { left } else { right },
            }
        }
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            TreeNode::Leaf { .. } => 1,
            TreeNode::Internal { left, right, .. } => left.n_leaves() + right.n_leaves(),
        }
    }
}

/// A fitted tree together with the shape of the data it was fitted on.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionTree {
    pub root: TreeNode,
    pub n_features: usize,
    pub n_classes: usize,
}

impl DecisionTree {
    pub fn predict_proba(&self, x: &[f64]) -> Result<&[f64]> {
        if x.len() != self.n_features {
            return Err(Error::DimensionMismatch {
                expected: self.n_features,
                found: x.len(),
            });
        }
        Ok(self.root.leaf_for(x))
    }
}

pub fn predict_proba_tree(tree: &DecisionTree, x: &[f64]) -> Result<Vec<f64>> {
    tree.predict_proba(x).map(<[f64]>::to_vec)
}

/// Fits an unpruned CART tree on every row of `x`.
pub fn fit_decision_tree(
    x: &FeatureMatrix,
    y: &[usize],
    n_classes: usize,
    config: &TreeConfig,
) -> Result<DecisionTree> {
    let rows: Vec<usize> = (0..x.n_rows()).collect();
    fit_on_rows(x, y, n_classes, config, rows)
}

/// Fits on a multiset of row indices (bootstrap samples repeat rows).
pub(crate) fn fit_on_rows(
    x: &FeatureMatrix,
    y: &[usize],
    n_classes: usize,
    config: &TreeConfig,
    mut rows: Vec<usize>,
) -> Result<DecisionTree> {
    if rows.is_empty() || x.n_rows() == 0 {
        return Err(Error::EmptyTrainingSet);
    }
    if x.n_rows() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.n_rows(),
            found: y.len(),
        });
    }
    if config.min_leaf_size == 0 {
        return Err(Error::InvalidConfig("min_leaf_size must be at least 1".into()));
    }
    if let Some(&bad) = y.iter().find(|&&c| c >= n_classes) {
        return Err(Error::InvalidConfig(format!("class index {bad} >= n_classes {n_classes}")));
    }
    let mut builder = Builder {
        x,
        y,
        n_classes,
        criterion: config.criterion,
        min_leaf: config.min_leaf_size,
        max_features: config.max_features.resolve(x.n_cols()),
        sample_features: !matches!(config.max_features, MaxFeatures::All),
        rng: seed::rng(config.seed),
        features: (0..x.n_cols()).collect(),
        scratch: Vec::with_capacity(rows.len()),
    };
    let root = builder.build(&mut rows);
    Ok(DecisionTree {
        root,
        n_features: x.n_cols(),
        n_classes,
    })
}

struct Builder<'a> {
    x: &'a FeatureMatrix,
    y: &'a [usize],
    n_classes: usize,
    criterion: SplitCriterion,
    min_leaf: usize,
    max_features: usize,
    sample_features: bool,
    rng: Rng,
    features: Vec<usize>,
    scratch: Vec<(f64, usize)>,
}

#[derive(Clone, Copy)]
struct Split {
    feature: usize,
    threshold: f64,
    gain: f64,
}

impl Split {
    fn beats(&self, other: &Option<Split>) -> bool {
        match other {
            None => true,
            Some(o) => {
                self.gain > o.gain
                    || (self.gain == o.gain
                        && (self.feature, self.threshold) < (o.feature, o.threshold))
            }
        }
    }
}

fn impurity(criterion: SplitCriterion, counts: &[usize], n: usize) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    match criterion {
        SplitCriterion::Gini => 1.0 - counts.iter().map(|&c| (c as f64 / n).powi(2)).sum::<f64>(),
        SplitCriterion::Entropy => counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.log2()
            })
            .sum(),
    }
}

impl Builder<'_> {
    fn leaf(&self, counts: &[usize], n: usize) -> TreeNode {
        TreeNode::Leaf {
            distribution: counts.iter().map(|&c| c as f64 / n as f64).collect(),
        }
    }

    fn build(&mut self, rows: &mut [usize]) -> TreeNode {
        let n = rows.len();
        let mut counts = vec![0usize; self.n_classes];
        for &r in rows.iter() {
            counts[self.y[r]] += 1;
        }
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;
        if pure || n < 2 * self.min_leaf {
            return self.leaf(&counts, n);
        }
        let Some(split) = self.best_split(rows, &counts) else {
            return self.leaf(&counts, n);
        };
        let x = self.x;
        let mut mid = 0;
        for i in 0..n {
            if x.get(rows[i], split.feature) <= split.threshold {
                rows.swap(i, mid);
                mid += 1;
            }
        }
        let (l, r) = rows.split_at_mut(mid);
        let left = Box::new(self.build(l));
        let right = Box::new(self.build(r));
        TreeNode::Internal {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
        }
    }

    fn best_split(&mut self, rows: &[usize], counts: &[usize]) -> Option<Split> {
        let n = rows.len();
        let parent = impurity(self.criterion, counts, n);
        if self.sample_features {
            self.features.shuffle(&mut self.rng);
        }
        let mut best: Option<Split> = None;
        let mut visited = 0;
        let mut left = vec![0usize; self.n_classes];
        let mut right = vec![0usize; self.n_classes];
        for fi in 0..self.features.len() {
            if visited >= self.max_features {
                break;
            }
            let f = self.features[fi];
            self.scratch.clear();
            self.scratch.extend(rows.iter().map(|&r| (self.x.get(r, f), self.y[r])));
            self.scratch.sort_by(|a, b| a.0.total_cmp(&b.0));
            if self.scratch[0].0 == self.scratch[n - 1].0 {
                // constant features do not count towards max_features
                continue;
            }
            visited += 1;
            left.iter_mut().for_each(|c| *c = 0);
            right.copy_from_slice(counts);
            for i in 0..n - 1 {
                let (v, c) = self.scratch[i];
                left[c] += 1;
                right[c] -= 1;
                let next = self.scratch[i + 1].0;
                let n_left = i + 1;
                if v == next || n_left < self.min_leaf || n - n_left < self.min_leaf {
                    continue;
                }
                let gain = parent
                    - (n_left as f64 / n as f64) * impurity(self.criterion, &left, n_left)
                    - ((n - n_left) as f64 / n as f64) * impurity(self.criterion, &right, n - n_left);
                let mut threshold = v + (next - v) / 2.0;
                if threshold >= next {
                    threshold = v;
                }
                let cand = Split {
                    feature: f,
                    threshold,
                    gain,
                };
                if cand.beats(&best) {
                    best = Some(cand);
                }
            }
        }
        best
    }
}
