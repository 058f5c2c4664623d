use crate::error::{Error, Result};

/// One labelled series.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub values: Vec<f64>,
    pub label: String,
}

/// An immutable collection of equal-length labelled series.
///
/// Class indices follow the order of `class_labels`, which fixes the column
/// order of every probability vector produced for this dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeriesDataset {
    problem_name: String,
    cases: Vec<Case>,
    class_labels: Vec<String>,
    series_length: usize,
    targets: Vec<usize>,
}

impl TimeSeriesDataset {
    /// Builds a dataset, checking every invariant.
    ///
    /// `series_length` must be given explicitly when `cases` is empty.
    pub fn new(
        problem_name: impl Into<String>,
        class_labels: Vec<String>,
        cases: Vec<Case>,
        series_length: Option<usize>,
    ) -> Result<Self> {
        if class_labels.is_empty() {
            return Err(Error::InvalidDataset("no class labels".into()));
        }
        for (i, l) in class_labels.iter().enumerate() {
            if class_labels[..i].contains(l) {
                return Err(Error::InvalidDataset(format!("duplicate class label {l:?}")));
            }
        }
        let series_length = match series_length.or_else(|| cases.first().map(|c| c.values.len())) {
            Some(n) if n > 0 => n,
            _ => return Err(Error::InvalidDataset("series length must be positive".into())),
        };
        let mut targets = Vec::with_capacity(cases.len());
        for (row, case) in cases.iter().enumerate() {
            if case.values.len() != series_length {
                return Err(Error::RaggedInput {
                    row,
                    expected: series_length,
                    found: case.values.len(),
                });
            }
            if let Some(v) = case.values.iter().find(|v| !v.is_finite()) {
                return Err(Error::NonNumericValue {
                    line: row,
                    value: v.to_string(),
                });
            }
            let idx = class_labels
                .iter()
                .position(|l| *l == case.label)
                .ok_or_else(|| Error::UnknownLabel {
                    line: row,
                    label: case.label.clone(),
                })?;
            targets.push(idx);
        }
        Ok(Self {
            problem_name: problem_name.into(),
            cases,
            class_labels,
            series_length,
            targets,
        })
    }

    /// Builds a dataset from rectangular rows and per-row labels. Classes are
    /// ordered by first appearance.
    pub fn from_rows<L: ToString>(
        problem_name: impl Into<String>,
        rows: Vec<Vec<f64>>,
        labels: &[L],
    ) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::DimensionMismatch {
                expected: rows.len(),
                found: labels.len(),
            });
        }
        let expected = rows.first().map_or(0, Vec::len);
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != expected) {
            return Err(Error::RaggedInput {
                row,
                expected,
                found: r.len(),
            });
        }
        let mut class_labels: Vec<String> = Vec::new();
        let cases = rows
            .into_iter()
            .zip(labels)
            .map(|(values, l)| {
                let label = l.to_string();
                if !class_labels.contains(&label) {
                    class_labels.push(label.clone());
                }
                Case { values, label }
            })
            .collect();
        Self::new(problem_name, class_labels, cases, None)
    }

    /// A dataset with the same metadata and a different set of cases.
    pub fn with_cases(&self, cases: Vec<Case>) -> Result<Self> {
        Self::new(
            self.problem_name.clone(),
            self.class_labels.clone(),
            cases,
            Some(self.series_length),
        )
    }

    /// The subset of cases at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Self {
        Self {
            problem_name: self.problem_name.clone(),
            cases: indices.iter().map(|&i| self.cases[i].clone()).collect(),
            class_labels: self.class_labels.clone(),
            series_length: self.series_length,
            targets: indices.iter().map(|&i| self.targets[i]).collect(),
        }
    }

    pub fn problem_name(&self) -> &str {
        &self.problem_name
    }

    pub fn cases(&self) -> &[Case] {
        &self.cases
    }

    pub fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    pub fn n_classes(&self) -> usize {
        self.class_labels.len()
    }

    pub fn series_length(&self) -> usize {
        self.series_length
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn series(&self, i: usize) -> &[f64] {
        &self.cases[i].values
    }

    /// Class index of every case.
    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes()];
        for &t in &self.targets {
            counts[t] += 1;
        }
        counts
    }

    /// Population standard deviation over every value of every case.
    pub fn pooled_std(&self) -> f64 {
        let n = (self.len() * self.series_length) as f64;
        if n == 0.0 {
            return 0.0;
        }
        let mean = self.cases.iter().flat_map(|c| &c.values).sum::<f64>() / n;
        let ss = self
            .cases
            .iter()
            .flat_map(|c| &c.values)
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>();
        (ss / n).sqrt()
    }

    /// Checks that `other` can be scored by a model trained on `self`.
    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.series_length != other.series_length {
            return Err(Error::SeriesLengthMismatch(self.series_length, other.series_length));
        }
        if self.class_labels != other.class_labels {
            return Err(Error::IncompatibleDatasets("class labels differ".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_rows_uses_first_appearance_order() {
        let d = TimeSeriesDataset::from_rows("x", vec![vec![1.0, 2.0], vec![3.0, 4.0]], &["b", "a"])
            .unwrap();
        assert_eq!(d.class_labels(), ["b", "a"]);
        assert_eq!(d.targets(), [0, 1]);
        assert_eq!(d.series_length(), 2);
        assert_eq!(d.series(1), [3.0, 4.0]);
    }

    #[test]
    fn ragged_rows_rejected() {
        let e = TimeSeriesDataset::from_rows("x", vec![vec![1.0, 2.0], vec![3.0]], &["a", "b"])
            .unwrap_err();
        assert!(matches!(e, Error::RaggedInput { row: 1, .. }));
    }

    #[test]
    fn duplicate_labels_rejected() {
        let e = TimeSeriesDataset::new("x", vec!["a".into(), "a".into()], vec![], Some(3))
            .unwrap_err();
        assert!(matches!(e, Error::InvalidDataset(_)));
    }
}
