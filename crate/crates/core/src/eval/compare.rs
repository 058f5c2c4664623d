use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::metrics::{compute_metrics, midranks, MetricSet};
use super::results::ClassifierResults;
use super::stats::{holm_adjust, holm_correct, wilcoxon_signed_rank, win_draw_loss};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Accuracy,
    BalancedAccuracy,
    Auc,
    Nll,
}

impl Metric {
    pub fn higher_is_better(self) -> bool {
        self != Metric::Nll
    }

    pub fn of(self, m: &MetricSet) -> f64 {
        match self {
            Metric::Accuracy => m.accuracy,
            Metric::BalancedAccuracy => m.balanced_accuracy,
            Metric::Auc => m.auc,
            Metric::Nll => m.nll,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Metric::Accuracy => "acc",
            Metric::BalancedAccuracy => "balacc",
            Metric::Auc => "auc",
            Metric::Nll => "nll",
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acc" => Ok(Metric::Accuracy),
            "balacc" => Ok(Metric::BalancedAccuracy),
            "auc" => Ok(Metric::Auc),
            "nll" => Ok(Metric::Nll),
            _ => Err(Error::InvalidParameter(format!("unknown metric {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairComparison {
    pub a: usize,
    pub b: usize,
    /// Wilcoxon p-value; 1 when there are too few non-zero differences.
    pub p_value: f64,
    pub adjusted_p: f64,
    pub reject: bool,
    /// Wins, draws and losses of `a` against `b`, in metric direction.
    pub wins: usize,
    pub draws: usize,
    pub losses: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonSummary {
    pub classifiers: Vec<String>,
    pub datasets: Vec<String>,
    pub metric: Metric,
    /// `matrix[dataset][classifier]`
    pub matrix: Vec<Vec<f64>>,
    pub average_ranks: Vec<f64>,
    pub pairs: Vec<PairComparison>,
    /// Maximal sets of classifiers with no significant pairwise difference.
    pub cliques: Vec<Vec<usize>>,
}

/// Mean rank per column, rank 1 being the best value in each row; ties share
/// the mean of their ranks.
pub fn average_ranks(matrix: &[Vec<f64>], higher_is_better: bool) -> Vec<f64> {
    let k = matrix.first().map_or(0, Vec::len);
    let mut sums = vec![0.0; k];
    for row in matrix {
        let keyed: Vec<f64> = row.iter().map(|&v| if higher_is_better { -v } else { v }).collect();
        for (s, r) in sums.iter_mut().zip(midranks(&keyed)) {
            *s += r;
        }
    }
    sums.iter().map(|s| s / matrix.len() as f64).collect()
}

/// All maximal cliques of the graph on `0..k` with the given adjacency,
/// each sorted, in lexicographic order.
pub fn maximal_cliques(k: usize, adjacent: impl Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn expand(
        r: &mut Vec<usize>,
        mut p: BTreeSet<usize>,
        mut x: BTreeSet<usize>,
        adj: &dyn Fn(usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() && x.is_empty() {
            let mut c = r.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        let pivot = *p.iter().chain(&x).next().expect("non-empty");
        let candidates: Vec<usize> = p.iter().copied().filter(|&v| v == pivot || !adj(pivot, v)).collect();
        for v in candidates {
            r.push(v);
            let np = p.iter().copied().filter(|&u| u != v && adj(u, v)).collect();
            let nx = x.iter().copied().filter(|&u| u != v && adj(u, v)).collect();
            expand(r, np, nx, adj, out);
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut out = Vec::new();
    expand(&mut Vec::new(), (0..k).collect(), BTreeSet::new(), &adjacent, &mut out);
    out.sort();
    out
}

/// Ranks, pairwise Wilcoxon tests with Holm correction, cliques and
/// win/draw/loss counts for a dataset × classifier matrix.
pub fn compare(
    classifiers: Vec<String>,
    datasets: Vec<String>,
    matrix: Vec<Vec<f64>>,
    metric: Metric,
    alpha: f64,
) -> Result<ComparisonSummary> {
    let k = classifiers.len();
    if k < 2 {
        return Err(Error::InvalidConfig("need at least two classifiers".into()));
    }
    if datasets.len() < 5 {
        return Err(Error::TooFewSamples(datasets.len()));
    }
    if matrix.len() != datasets.len() || matrix.iter().any(|r| r.len() != k) {
        return Err(Error::InconsistentDimensions);
    }
    let column = |j: usize| -> Vec<f64> {
        matrix
            .iter()
            .map(|r| if metric.higher_is_better() { r[j] } else { -r[j] })
            .collect()
    };
    let mut pairs = Vec::new();
    for a in 0..k {
        for b in a + 1..k {
            let (ca, cb) = (column(a), column(b));
            let p_value = match wilcoxon_signed_rank(&ca, &cb) {
                Ok(p) => p,
                Err(Error::TooFewSamples(_)) => 1.0,
                Err(e) => return Err(e),
            };
            let (wins, draws, losses) = win_draw_loss(&ca, &cb)?;
            pairs.push(PairComparison {
                a,
                b,
                p_value,
                adjusted_p: 0.0,
                reject: false,
                wins,
                draws,
                losses,
            });
        }
    }
    let ps: Vec<f64> = pairs.iter().map(|p| p.p_value).collect();
    for ((pair, adj), rej) in pairs.iter_mut().zip(holm_adjust(&ps)).zip(holm_correct(&ps, alpha)) {
        pair.adjusted_p = adj;
        pair.reject = rej;
    }
    let rejected: BTreeSet<(usize, usize)> = pairs.iter().filter(|p| p.reject).map(|p| (p.a, p.b)).collect();
    let cliques = maximal_cliques(k, |u, v| !rejected.contains(&(u.min(v), u.max(v))));
    Ok(ComparisonSummary {
        average_ranks: average_ranks(&matrix, metric.higher_is_better()),
        classifiers,
        datasets,
        metric,
        matrix,
        pairs,
        cliques,
    })
}

/// Reads every `<dir>/<classifier>/Predictions/<problem>/testFold*.csv`,
/// averages the metric over the folds present for every classifier, and
/// compares on the problems all classifiers share.
pub fn compare_results_dir(dir: &Path, classifiers: &[String], metric: Metric, alpha: f64) -> Result<ComparisonSummary> {
    // classifier -> problem -> fold -> metric value
    let mut all: Vec<BTreeMap<String, BTreeMap<u64, f64>>> = Vec::new();
    for c in classifiers {
        let root = dir.join(c).join("Predictions");
        let mut per_problem = BTreeMap::new();
        let entries = std::fs::read_dir(&root).map_err(|_| Error::DatasetNotFound(root.display().to_string()))?;
        for problem in entries {
            let problem = problem?.path();
            if !problem.is_dir() {
                continue;
            }
            let mut folds = BTreeMap::new();
            for f in std::fs::read_dir(&problem)? {
                let path = f?.path();
                let name = path.file_name().and_then(|s| s.to_str()).unwrap_or_default();
                if !(name.starts_with("testFold") && name.ends_with(".csv")) {
                    continue;
                }
                let r = ClassifierResults::parse_csv(&std::fs::read_to_string(&path)?)?;
                let n_classes = r.cases.first().map_or(0, |c| c.probabilities.len());
                folds.insert(r.resample_id, metric.of(&compute_metrics(&r, n_classes)?));
            }
            let name = problem.file_name().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            per_problem.insert(name, folds);
        }
        all.push(per_problem);
    }
    let mut datasets = Vec::new();
    let mut matrix = Vec::new();
    for problem in all[0].keys() {
        let Some(fold_sets) = all.iter().map(|m| m.get(problem)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        let common: BTreeSet<u64> = fold_sets[0]
            .keys()
            .copied()
            .filter(|f| fold_sets.iter().all(|s| s.contains_key(f)))
            .collect();
        if common.is_empty() {
            continue;
        }
        let row = fold_sets
            .iter()
            .map(|s| common.iter().map(|f| s[f]).sum::<f64>() / common.len() as f64)
            .collect();
        datasets.push(problem.clone());
        matrix.push(row);
    }
    compare(classifiers.to_vec(), datasets, matrix, metric, alpha)
}

impl ComparisonSummary {
    /// Blank-line separated CSV sections: metric matrix, average ranks,
    /// pairwise tests, cliques, and per-pair scatter points.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "problem,{}", self.classifiers.join(","));
        for (d, row) in self.datasets.iter().zip(&self.matrix) {
            let vals: Vec<String> = row.iter().map(|v| format!("{v:.6}")).collect();
            let _ = writeln!(s, "{d},{}", vals.join(","));
        }
        let _ = writeln!(s, "\nclassifier,average_rank");
        for (c, r) in self.classifiers.iter().zip(&self.average_ranks) {
            let _ = writeln!(s, "{c},{r:.6}");
        }
        let _ = writeln!(s, "\nclassifier_a,classifier_b,p_value,holm_adjusted_p,significant,wins,draws,losses");
        for p in &self.pairs {
            let _ = writeln!(
                s,
                "{},{},{:.6},{:.6},{},{},{},{}",
                self.classifiers[p.a], self.classifiers[p.b], p.p_value, p.adjusted_p, p.reject, p.wins, p.draws, p.losses
            );
        }
        let _ = writeln!(s, "\nclique,members");
        for (i, c) in self.cliques.iter().enumerate() {
            let names: Vec<&str> = c.iter().map(|&j| self.classifiers[j].as_str()).collect();
            let _ = writeln!(s, "{i},{}", names.join(";"));
        }
        let _ = writeln!(s, "\nclassifier_a,classifier_b,problem,x,y");
        for p in &self.pairs {
            for (d, row) in self.datasets.iter().zip(&self.matrix) {
                let _ = writeln!(
                    s,
                    "{},{},{d},{:.6},{:.6}",
                    self.classifiers[p.a], self.classifiers[p.b], row[p.a], row[p.b]
                );
            }
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        (0..k).map(|i| format!("c{i}")).collect()
    }

    #[test]
    fn dominating_classifier() {
        let matrix: Vec<Vec<f64>> = (0..6).map(|i| vec![0.9 + i as f64 * 0.01, 0.5, 0.6]).collect();
        let ranks = average_ranks(&matrix, true);
        assert_eq!(ranks, vec![1.0, 3.0, 2.0]);
        assert_eq!(average_ranks(&matrix, false), vec![3.0, 1.0, 2.0]);
    }

    #[test]
    fn ties_form_one_clique() {
        let matrix = vec![vec![0.7, 0.7]; 6];
        let s = compare(names(2), names(6), matrix, Metric::Accuracy, 0.05).unwrap();
        assert_eq!(s.average_ranks, vec![1.5, 1.5]);
        assert_eq!(s.cliques, vec![vec![0, 1]]);
        assert_eq!((s.pairs[0].wins, s.pairs[0].draws, s.pairs[0].losses), (0, 6, 0));
    }

    #[test]
    fn clique_enumeration() {
        // path 0-1-2 plus isolated 3
        let edges = [(0, 1), (1, 2)];
        let adj = |u: usize, v: usize| edges.contains(&(u.min(v), u.max(v)));
        assert_eq!(maximal_cliques(4, adj), vec![vec![0, 1], vec![1, 2], vec![3]]);
        assert_eq!(maximal_cliques(3, |_, _| true), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn nll_direction() {
        let matrix: Vec<Vec<f64>> = (0..8).map(|i| vec![0.1 + i as f64 * 0.01, 2.0 + i as f64]).collect();
        let s = compare(names(2), names(8), matrix, Metric::Nll, 0.05).unwrap();
        assert_eq!(s.average_ranks, vec![1.0, 2.0]);
        assert_eq!(s.pairs[0].wins, 8);
        assert!(s.pairs[0].reject);
        assert_eq!(s.cliques, vec![vec![0], vec![1]]);
    }
}
