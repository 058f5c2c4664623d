use super::results::ClassifierResults;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSet {
    pub accuracy: f64,
    pub balanced_accuracy: f64,
    /// Class-frequency-weighted one-vs-rest ROC area.
    pub auc: f64,
    /// Mean negative log2 probability of the true class, floored at 1e-6.
    pub nll: f64,
}

/// Ranks with ties sharing their mean rank, starting at 1.
pub(crate) fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let r = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Mann-Whitney form of the ROC area for one class against the rest;
/// `None` if either side is empty.
fn one_vs_rest_auc(scores: &[f64], positive: &[bool]) -> Option<f64> {
    let n_pos = positive.iter().filter(|&&p| p).count();
    let n_neg = positive.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return None;
    }
    let ranks = midranks(scores);
    let rank_sum: f64 = ranks.iter().zip(positive).filter(|(_, &p)| p).map(|(r, _)| r).sum();
    let (p, n) = (n_pos as f64, n_neg as f64);
    Some((rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}

pub fn compute_metrics(results: &ClassifierResults, n_classes: usize) -> Result<MetricSet> {
    let cases = &results.cases;
    if cases.is_empty() {
        return Err(Error::EmptyResults);
    }
    if let Some(c) = cases.iter().find(|c| c.probabilities.len() != n_classes || c.true_class >= n_classes) {
        return Err(Error::DimensionMismatch {
            expected: n_classes,
            found: c.probabilities.len(),
        });
    }
    let n = cases.len() as f64;
    let accuracy = cases.iter().filter(|c| c.predicted_class == c.true_class).count() as f64 / n;

    let mut support = vec![0usize; n_classes];
    let mut hits = vec![0usize; n_classes];
    for c in cases {
        support[c.true_class] += 1;
        if c.predicted_class == c.true_class {
            hits[c.true_class] += 1;
        }
    }
    let present: Vec<usize> = (0..n_classes).filter(|&k| support[k] > 0).collect();
    let balanced_accuracy =
        present.iter().map(|&k| hits[k] as f64 / support[k] as f64).sum::<f64>() / present.len() as f64;

    let mut auc = 0.0;
    for &k in &present {
        let scores: Vec<f64> = cases.iter().map(|c| c.probabilities[k]).collect();
        let positive: Vec<bool> = cases.iter().map(|c| c.true_class == k).collect();
        auc += support[k] as f64 / n * one_vs_rest_auc(&scores, &positive).unwrap_or(0.5);
    }

    let nll = -cases
        .iter()
        .map(|c| c.probabilities[c.true_class].max(1e-6).log2())
        .sum::<f64>()
        / n;

    Ok(MetricSet {
        accuracy,
        balanced_accuracy,
        auc,
        nll: nll.max(0.0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::results::CaseResult;

    fn results(rows: &[(usize, &[f64])]) -> ClassifierResults {
        ClassifierResults {
            problem_name: "p".into(),
            classifier_name: "c".into(),
            resample_id: 0,
            parameter_text: String::new(),
            cases: rows.iter().map(|(t, p)| CaseResult::new(*t, p.to_vec())).collect(),
            build_time_ns: 0,
            test_time_ns: 0,
        }
    }

    #[test]
    fn perfect_predictions() {
        let r = results(&[(0, &[1.0, 0.0, 0.0]), (2, &[0.0, 0.0, 1.0]), (1, &[0.0, 1.0, 0.0])]);
        let m = compute_metrics(&r, 3).unwrap();
        assert_eq!((m.accuracy, m.balanced_accuracy, m.auc, m.nll), (1.0, 1.0, 1.0, 0.0));
    }

    #[test]
    fn uniform_nll_is_log_classes() {
        let u = [0.25; 4];
        let r = results(&[(0, &u), (1, &u), (3, &u)]);
        assert!((compute_metrics(&r, 4).unwrap().nll - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ranking_auc() {
        let r = results(&[(1, &[0.1, 0.9]), (1, &[0.2, 0.8]), (0, &[0.7, 0.3]), (0, &[0.9, 0.1])]);
        assert_eq!(compute_metrics(&r, 2).unwrap().auc, 1.0);
        let scores = [0.5, 0.5, 0.2, 0.7];
        assert_eq!(one_vs_rest_auc(&scores, &[true, false, false, true]), Some(0.875));
    }

    #[test]
    fn balanced_accuracy_ignores_absent_classes() {
        let r = results(&[(0, &[0.9, 0.1, 0.0]), (0, &[0.1, 0.9, 0.0]), (1, &[0.0, 1.0, 0.0])]);
        let m = compute_metrics(&r, 3).unwrap();
        assert_eq!(m.balanced_accuracy, 0.75);
        assert_eq!(compute_metrics(&results(&[]), 3), Err(Error::EmptyResults));
    }
}
