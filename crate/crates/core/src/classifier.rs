//! The common fit/predict surface shared by every classifier.

use std::fmt::Debug;

use crate::data::TimeSeriesDataset;
use crate::error::{Error, Result};
use crate::par;
use crate::tree::argmax;

/// A classifier configuration that can be fitted to a dataset.
pub trait Classifier: Send + Sync {
    fn fit(&self, train: &TimeSeriesDataset) -> Result<Box<dyn Model>>;

    /// Human-readable parameter summary, written to results files.
    fn describe(&self) -> String;
}

/// A fitted, immutable model.
pub trait Model: Send + Sync + Debug {
    fn class_labels(&self) -> &[String];

    fn series_length(&self) -> usize;

    /// Class distribution for one series, in `class_labels` order.
    fn predict_proba_one(&self, series: &[f64]) -> Result<Vec<f64>>;

    fn predict_proba(&self, test: &TimeSeriesDataset) -> Result<Vec<Vec<f64>>> {
        self.check_length(test.series_length())?;
        par::try_map_range(test.len(), |i| self.predict_proba_one(test.series(i)))
    }

    fn predict(&self, test: &TimeSeriesDataset) -> Result<Vec<usize>> {
        Ok(self.predict_proba(test)?.iter().map(|p| argmax(p)).collect())
    }

    fn check_length(&self, found: usize) -> Result<()> {
        if found != self.series_length() {
            return Err(Error::SeriesLengthMismatch(self.series_length(), found));
        }
        Ok(())
    }
}
