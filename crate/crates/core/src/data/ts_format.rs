//! The `.ts` text format.
//!
//! ```text
//! # comment
//! @problemName Example
//! @univariate true
//! @equalLength true
//! @seriesLength 3
//! @classLabel true a b
//! @data
//! 1.0,2.0,3.0:a
//! ```

use std::fmt::Write as _;
use std::path::Path;

use super::{Case, TimeSeriesDataset};
use crate::error::{Error, Result};

/// Parses the full contents of a `.ts` file.
pub fn parse_ts_file(text: &str) -> Result<TimeSeriesDataset> {
    let mut problem_name = String::new();
    let mut series_length: Option<usize> = None;
    let mut class_labels: Option<Vec<String>> = None;
    let mut lines = text.lines().enumerate();
    let mut saw_data = false;

    for (_, raw) in lines.by_ref() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if !line.starts_with('@') {
            return Err(Error::MalformedHeader(format!("unexpected line before @data: {line:?}")));
        }
        let mut parts = line.split_whitespace();
        let directive = parts.next().unwrap_or_default().to_ascii_lowercase();
        match directive.as_str() {
            "@data" => {
                saw_data = true;
                break;
            }
            "@problemname" => problem_name = parts.collect::<Vec<_>>().join(" "),
            "@univariate" => {
                if parse_flag(parts.next(), &directive)? == false {
                    return Err(Error::MultivariateUnsupported);
                }
            }
            "@serieslength" => {
                let n = parts
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .filter(|&n| n > 0)
                    .ok_or_else(|| Error::MalformedHeader("bad @seriesLength".into()))?;
                series_length = Some(n);
            }
            "@classlabel" => {
                if !parse_flag(parts.next(), &directive)? {
                    return Err(Error::MalformedHeader(
                        "@classLabel false: unlabelled data is not supported".into(),
                    ));
                }
                let labels: Vec<String> = parts.map(str::to_owned).collect();
                if labels.is_empty() {
                    return Err(Error::MalformedHeader("@classLabel lists no labels".into()));
                }
                class_labels = Some(labels);
            }
            // @timeStamps, @missing, @equalLength and anything else
            _ => {}
        }
    }

    if !saw_data {
        return Err(Error::MalformedHeader("missing @data".into()));
    }
    let class_labels =
        class_labels.ok_or_else(|| Error::MalformedHeader("missing @classLabel".into()))?;

    let mut cases = Vec::new();
    for (idx, raw) in lines {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (body, label) = line.rsplit_once(':').ok_or_else(|| Error::UnknownLabel {
            line: line_no,
            label: String::new(),
        })?;
        if body.contains(':') {
            return Err(Error::MultivariateUnsupported);
        }
        let label = label.trim();
        if !class_labels.iter().any(|l| l == label) {
            return Err(Error::UnknownLabel {
                line: line_no,
                label: label.to_owned(),
            });
        }
        let values = body
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| Error::NonNumericValue {
                        line: line_no,
                        value: tok.to_owned(),
                    })
            })
            .collect::<Result<Vec<f64>>>()?;
        let expected = *series_length.get_or_insert(values.len());
        if values.len() != expected {
            return Err(Error::LengthMismatch {
                line: line_no,
                expected,
                found: values.len(),
            });
        }
        cases.push(Case {
            values,
            label: label.to_owned(),
        });
    }

    let series_length =
        series_length.ok_or_else(|| Error::MalformedHeader("no @seriesLength and no data".into()))?;
    TimeSeriesDataset::new(problem_name, class_labels, cases, Some(series_length))
}

fn parse_flag(token: Option<&str>, directive: &str) -> Result<bool> {
    match token.map(str::to_ascii_lowercase).as_deref() {
        Some("true") => Ok(true),
        Some("false") => Ok(false),
        _ => Err(Error::MalformedHeader(format!("{directive} expects true or false"))),
    }
}

/// Serializes a dataset to `.ts` text. Values use the shortest
/// representation that parses back to the same `f64`.
pub fn write_ts_file(dataset: &TimeSeriesDataset) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "@problemName {}", dataset.problem_name());
    out.push_str("@timeStamps false\n@missing false\n@univariate true\n@equalLength true\n");
    let _ = writeln!(out, "@seriesLength {}", dataset.series_length());
    let _ = writeln!(out, "@classLabel true {}", dataset.class_labels().join(" "));
    out.push_str("@data\n");
    for case in dataset.cases() {
        for (i, v) in case.values.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v:?}");
        }
        let _ = writeln!(out, ":{}", case.label);
    }
    out
}

/// Loads `<data_dir>/<problem>/<problem>_TRAIN.ts` and `_TEST.ts`.
pub fn load_problem(
    data_dir: impl AsRef<Path>,
    problem: &str,
) -> Result<(TimeSeriesDataset, TimeSeriesDataset)> {
    let dir = data_dir.as_ref().join(problem);
    let read = |suffix: &str| -> Result<TimeSeriesDataset> {
        let path = dir.join(format!("{problem}_{suffix}.ts"));
        let text = std::fs::read_to_string(&path)
            .map_err(|_| Error::DatasetNotFound(path.display().to_string()))?;
        parse_ts_file(&text)
    };
    Ok((read("TRAIN")?, read("TEST")?))
}
