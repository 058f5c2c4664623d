//! Time series classification.
//!
//! Interval ensembles (TSF, RISE), dictionary ensembles (BOSS, cBOSS), the
//! shapelet transform classifier, distance-based classifiers (1NN, the
//! Elastic Ensemble, Proximity Forest) and the evaluation machinery used to
//! compare them.

pub mod classifier;
pub mod data;
pub mod dictionary;
pub mod distance;
pub mod error;
pub mod eval;
pub mod interval;
pub mod kernels;
pub mod neighbours;
pub mod par;
pub mod seed;
pub mod shapelet;
pub mod tree;

pub use error::{Error, Result};
