use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::tree::argmax;

#[derive(Debug, Clone, PartialEq)]
pub struct CaseResult {
    pub true_class: usize,
    pub predicted_class: usize,
    pub probabilities: Vec<f64>,
}

impl CaseResult {
    /// Prediction is the most probable class, lowest index on ties.
    pub fn new(true_class: usize, probabilities: Vec<f64>) -> Self {
        Self {
            true_class,
            predicted_class: argmax(&probabilities),
            probabilities,
        }
    }
}

/// Predictions of one classifier on one resample of one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierResults {
    pub problem_name: String,
    pub classifier_name: String,
    pub resample_id: u64,
    pub parameter_text: String,
    pub cases: Vec<CaseResult>,
    pub build_time_ns: u128,
    pub test_time_ns: u128,
}

/// `<root>/<classifier>/Predictions/<problem>/testFold<resample>.csv`
pub fn results_path(root: &Path, classifier: &str, problem: &str, resample_id: u64) -> PathBuf {
    root.join(classifier)
        .join("Predictions")
        .join(problem)
        .join(format!("testFold{resample_id}.csv"))
}

impl ClassifierResults {
    pub fn accuracy(&self) -> f64 {
        if self.cases.is_empty() {
            return 0.0;
        }
        let correct = self.cases.iter().filter(|c| c.true_class == c.predicted_class).count();
        correct as f64 / self.cases.len() as f64
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{},{},test,{}", self.problem_name, self.classifier_name, self.resample_id);
        let _ = writeln!(s, "{}", self.parameter_text.replace('\n', " "));
        let _ = writeln!(s, "{:.6},{},{}", self.accuracy(), self.build_time_ns, self.test_time_ns);
        for c in &self.cases {
            let _ = write!(s, "{},{},", c.true_class, c.predicted_class);
            for p in &c.probabilities {
                let _ = write!(s, ",{p:.6}");
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_csv(text: &str) -> Result<Self> {
        let bad = |line: usize, what: &str| Error::MalformedHeader(format!("results line {line}: {what}"));
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().ok_or_else(|| bad(1, "missing"))?.split(',').collect();
        if header.len() != 4 {
            return Err(bad(1, "expected problem,classifier,split,resampleId"));
        }
        let resample_id = header[3].parse().map_err(|_| bad(1, "resample id"))?;
        let parameter_text = lines.next().ok_or_else(|| bad(2, "missing"))?.to_string();
        let timing: Vec<&str> = lines.next().ok_or_else(|| bad(3, "missing"))?.split(',').collect();
        if timing.len() != 3 {
            return Err(bad(3, "expected accuracy,buildTimeNs,testTimeNs"));
        }
        let build_time_ns = timing[1].parse().map_err(|_| bad(3, "build time"))?;
        let test_time_ns = timing[2].parse().map_err(|_| bad(3, "test time"))?;
        let mut cases = Vec::new();
        for (k, line) in lines.enumerate() {
            let n = k + 4;
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() < 4 || !fields[2].is_empty() {
                return Err(bad(n, "expected trueIdx,predIdx,,p_0,..."));
            }
            let num = |s: &str| -> Result<f64> {
                s.parse().map_err(|_| Error::NonNumericValue {
                    line: n,
                    value: s.to_string(),
                })
            };
            cases.push(CaseResult {
                true_class: fields[0].parse().map_err(|_| bad(n, "true index"))?,
                predicted_class: fields[1].parse().map_err(|_| bad(n, "predicted index"))?,
                probabilities: fields[3..].iter().map(|s| num(s)).collect::<Result<_>>()?,
            });
        }
        Ok(Self {
            problem_name: header[0].to_string(),
            classifier_name: header[1].to_string(),
            resample_id,
            parameter_text,
            cases,
            build_time_ns,
            test_time_ns,
        })
    }

    /// Writes the CSV under `root` at [`results_path`] and returns the path.
    pub fn write(&self, root: &Path) -> Result<PathBuf> {
        let path = results_path(root, &self.classifier_name, &self.problem_name, self.resample_id);
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        std::fs::write(&path, self.to_csv())?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let r = ClassifierResults {
            problem_name: "P".into(),
            classifier_name: "tsf".into(),
            resample_id: 3,
            parameter_text: "n_trees=2".into(),
            cases: vec![CaseResult::new(1, vec![0.25, 0.75]), CaseResult::new(0, vec![0.5, 0.5])],
            build_time_ns: 10,
            test_time_ns: 20,
        };
        let text = r.to_csv();
        assert_eq!(
            text,
            "P,tsf,test,3\nn_trees=2\n1.000000,10,20\n1,1,,0.250000,0.750000\n0,0,,0.500000,0.500000\n"
        );
        assert_eq!(ClassifierResults::parse_csv(&text).unwrap(), r);
    }
}
