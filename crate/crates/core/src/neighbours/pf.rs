use rand::Rng as _;

use super::nn::nearest_neighbour;
use crate::classifier::{Classifier, Model};
use crate::data::TimeSeriesDataset;
use crate::distance::{derivative_transform, Constituent, DistanceSpec};
use crate::error::{Error, Result};
use crate::seed::Rng;
use crate::tree::{ensemble_predict_proba, VoteMode};
use crate::{par, seed};

#[derive(Debug, Clone, PartialEq)]
pub struct PfConfig {
    pub n_trees: usize,
    /// Candidate splits evaluated at each internal node.
    pub n_stump_evaluations: usize,
    pub seed: u64,
}

impl Default for PfConfig {
    fn default() -> Self {
        Self {
            n_trees: 100,
            n_stump_evaluations: 5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PfNode {
    Internal {
        /// One exemplar per class present at the node, in class order, already
        /// prepared for `spec`.
        exemplars: Vec<Vec<f64>>,
        exemplar_classes: Vec<usize>,
        spec: DistanceSpec,
        children: Vec<PfNode>,
    },
    Leaf {
        distribution: Vec<f64>,
    },
}

impl PfNode {
    pub fn leaf_for(&self, series: &[f64]) -> Result<&[f64]> {
        let mut node = self;
        loop {
            match node {
                PfNode::Leaf { distribution } => return Ok(distribution),
                PfNode::Internal {
                    exemplars,
                    spec,
                    children,
                    ..
                } => {
                    let q = spec.prepare(series)?;
                    let candidates = exemplars.iter().enumerate().map(|(k, e)| (k, e.as_slice()));
                    let (k, _) = nearest_neighbour(spec, &q, candidates).ok_or(Error::InconsistentDimensions)?;
                    node = &children[k];
                }
            }
        }
    }

    pub fn n_leaves(&self) -> usize {
        match self {
            PfNode::Leaf { .. } => 1,
            PfNode::Internal { children, .. } => children.iter().map(PfNode::n_leaves).sum(),
        }
    }
}

/// A proposed split: exemplar case per present class, the measure, and the
/// resulting branch membership (branch `k` belongs to exemplar `k`).
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSplit {
    pub exemplars: Vec<usize>,
    pub exemplar_classes: Vec<usize>,
    pub spec: DistanceSpec,
    pub branches: Vec<Vec<usize>>,
}

/// Weighted Gini impurity of the children, given per-child class counts.
pub fn pf_gini_score(children: &[Vec<usize>]) -> f64 {
    let n: usize = children.iter().map(|c| c.iter().sum::<usize>()).sum();
    if n == 0 {
        return 0.0;
    }
    children
        .iter()
        .map(|counts| {
            let size: usize = counts.iter().sum();
            if size == 0 {
                return 0.0;
            }
            let purity: f64 = counts.iter().map(|&c| (c as f64 / size as f64).powi(2)).sum();
            size as f64 / n as f64 * (1.0 - purity)
        })
        .sum()
}

/// Training series in both representations the measures need.
struct TreeData<'a> {
    train: &'a TimeSeriesDataset,
    derivatives: Vec<Vec<f64>>,
}

impl<'a> TreeData<'a> {
    fn new(train: &'a TimeSeriesDataset) -> Result<Self> {
        let derivatives = (0..train.len())
            .map(|i| derivative_transform(train.series(i)))
            .collect::<Result<_>>()?;
        Ok(Self { train, derivatives })
    }

    fn view(&self, spec: &DistanceSpec, case: usize) -> &[f64] {
        if spec.measure().uses_derivative() {
            &self.derivatives[case]
        } else {
            self.train.series(case)
        }
    }

    fn class_counts(&self, cases: &[usize]) -> Vec<usize> {
        let mut counts = vec![0; self.train.n_classes()];
        for &c in cases {
            counts[self.train.targets()[c]] += 1;
        }
        counts
    }

    fn pooled_std(&self, cases: &[usize]) -> f64 {
        let values = || cases.iter().flat_map(|&c| self.train.series(c));
        let n = (cases.len() * self.train.series_length()) as f64;
        let mean = values().sum::<f64>() / n;
        (values().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n).sqrt()
    }

    fn candidate(&self, cases: &[usize], rng: &mut Rng) -> Result<CandidateSplit> {
        let targets = self.train.targets();
        let counts = self.class_counts(cases);
        let classes: Vec<usize> = (0..counts.len()).filter(|&k| counts[k] > 0).collect();
        if classes.len() < 2 {
            return Err(Error::SingleClassNode);
        }
        let exemplars: Vec<usize> = classes
            .iter()
            .map(|&k| {
                let pick = rng.random_range(0..counts[k]);
                *cases.iter().filter(|&&c| targets[c] == k).nth(pick).expect("class has cases")
            })
            .collect();
        let constituent = Constituent::ALL[rng.random_range(0..Constituent::ALL.len())];
        let spec = constituent.sample(self.pooled_std(cases), self.train.series_length(), rng);
        let mut branches = vec![Vec::new(); exemplars.len()];
        for &c in cases {
            let k = match exemplars.iter().position(|&e| e == c) {
                Some(k) => k,
                None => {
                    let q = self.view(&spec, c);
                    let candidates = exemplars.iter().enumerate().map(|(k, &e)| (k, self.view(&spec, e)));
                    nearest_neighbour(&spec, q, candidates).expect("at least two exemplars").0
                }
            };
            branches[k].push(c);
        }
        Ok(CandidateSplit {
            exemplars,
            exemplar_classes: classes,
            spec,
            branches,
        })
    }

    fn grow(&self, cases: &[usize], r: usize, rng: &mut Rng) -> Result<PfNode> {
        let counts = self.class_counts(cases);
        let n = cases.len() as f64;
        let distribution: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
        if counts.iter().filter(|&&c| c > 0).count() < 2 {
            return Ok(PfNode::Leaf { distribution });
        }
        let mut best: Option<(f64, CandidateSplit)> = None;
        for _ in 0..r {
            let split = self.candidate(cases, rng)?;
            let child_counts: Vec<Vec<usize>> = split.branches.iter().map(|b| self.class_counts(b)).collect();
            let g = pf_gini_score(&child_counts);
            if best.as_ref().is_none_or(|(bg, _)| g < *bg) {
                best = Some((g, split));
            }
        }
        let (_, split) = best.expect("r >= 1");
        if split.branches.iter().filter(|b| !b.is_empty()).count() < 2 {
            return Ok(PfNode::Leaf { distribution });
        }
        let children = split
            .branches
            .iter()
            .map(|b| self.grow(b, r, rng))
            .collect::<Result<Vec<_>>>()?;
        Ok(PfNode::Internal {
            exemplars: split.exemplars.iter().map(|&e| self.view(&split.spec, e).to_vec()).collect(),
            exemplar_classes: split.exemplar_classes,
            spec: split.spec,
            children,
        })
    }
}

/// One candidate split of `cases` (indices into `train`).
pub fn pf_generate_candidate_split(train: &TimeSeriesDataset, cases: &[usize], rng: &mut Rng) -> Result<CandidateSplit> {
    TreeData::new(train)?.candidate(cases, rng)
}

/// Grows one proximity tree on all of `train`, keeping the Gini-best of
/// `r` candidates at each node (earliest on ties) until leaves are pure.
pub fn pf_fit_tree(train: &TimeSeriesDataset, r: usize, rng: &mut Rng) -> Result<PfNode> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    if r == 0 {
        return Err(Error::InvalidConfig("n_stump_evaluations must be positive".into()));
    }
    let all: Vec<usize> = (0..train.len()).collect();
    TreeData::new(train)?.grow(&all, r, rng)
}

#[derive(Debug, Clone, PartialEq)]
pub struct PfModel {
    pub trees: Vec<PfNode>,
    pub class_labels: Vec<String>,
    pub series_length: usize,
}

pub fn pf_fit(train: &TimeSeriesDataset, config: &PfConfig) -> Result<PfModel> {
    if config.n_trees == 0 {
        return Err(Error::InvalidConfig("n_trees must be positive".into()));
    }
    let trees = par::try_map_range(config.n_trees, |i| {
        pf_fit_tree(train, config.n_stump_evaluations, &mut seed::child_rng(config.seed, i as u64))
    })?;
    Ok(PfModel {
        trees,
        class_labels: train.class_labels().to_vec(),
        series_length: train.series_length(),
    })
}

impl Model for PfModel {
    fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    fn series_length(&self) -> usize {
        self.series_length
    }

    /// Majority vote over the trees' leaf distributions.
    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>> {
        self.check_length(series.len())?;
        let leaves = self.trees.iter().map(|t| t.leaf_for(series)).collect::<Result<Vec<_>>>()?;
        ensemble_predict_proba(&leaves, VoteMode::Majority)
    }
}

impl Classifier for PfConfig {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>> {
        Ok(Box::new(pf_fit(train, self)?))
    }

    fn describe(&self) -> String {
        format!(
            "n_trees={},n_stump_evaluations={},seed={}",
            self.n_trees, self.n_stump_evaluations, self.seed
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy() -> TimeSeriesDataset {
        let rows = (0..10)
            .map(|i| (0..8).map(|t| if i % 2 == 0 { 0.1 * t as f64 } else { 3.0 - 0.2 * t as f64 } + i as f64 * 0.01).collect())
            .collect();
        let labels: Vec<usize> = (0..10).map(|i| i % 2).collect();
        TimeSeriesDataset::from_rows("toy", rows, &labels).unwrap()
    }

    #[test]
    fn gini_examples() {
        assert_eq!(pf_gini_score(&[vec![3, 0], vec![0, 2]]), 0.0);
        assert_eq!(pf_gini_score(&[vec![5, 5]]), 0.5);
        assert_eq!(pf_gini_score(&[vec![2, 0], vec![1, 1]]), 0.25);
    }

    #[test]
    fn two_cases_split_exactly() {
        let d = TimeSeriesDataset::from_rows("two", vec![vec![0.0, 1.0, 2.0], vec![5.0, 1.0, 0.0]], &["a", "b"]).unwrap();
        let s = pf_generate_candidate_split(&d, &[0, 1], &mut seed::rng(1)).unwrap();
        assert_eq!(s.exemplars, vec![0, 1]);
        assert_eq!(s.branches, vec![vec![0], vec![1]]);
        assert_eq!(
            pf_generate_candidate_split(&d, &[1], &mut seed::rng(1)),
            Err(Error::SingleClassNode)
        );
    }

    #[test]
    fn partitions_are_exhaustive() {
        let d = toy();
        let cases: Vec<usize> = (0..10).collect();
        let mut rng = seed::rng(5);
        for _ in 0..50 {
            let s = pf_generate_candidate_split(&d, &cases, &mut rng).unwrap();
            let mut all: Vec<usize> = s.branches.concat();
            all.sort_unstable();
            assert_eq!(all, cases);
        }
    }

    #[test]
    fn separable_forest() {
        let d = toy();
        let tree = pf_fit_tree(&d, 5, &mut seed::rng(2)).unwrap();
        for i in 0..d.len() {
            let leaf = tree.leaf_for(d.series(i)).unwrap();
            assert_eq!(leaf[d.targets()[i]], 1.0);
        }
        let m = pf_fit(&d, &PfConfig { n_trees: 7, ..PfConfig::default() }).unwrap();
        for p in m.predict_proba(&d).unwrap() {
            assert!(p.iter().all(|v| (v * 7.0 - (v * 7.0).round()).abs() < 1e-9));
        }
        assert_eq!(m.predict(&d).unwrap(), d.targets());
    }
}
