//! Labelled univariate time series datasets, `.ts` file IO and stratified
//! resampling.

mod dataset;
mod resample;
mod ts_format;

pub use dataset::{Case, TimeSeriesDataset};
pub use resample::{stratified_resample, ResamplePair};
pub use ts_format::{load_problem, parse_ts_file, write_ts_file};
