//! Random shapelet search, the shapelet distance transform, and the shapelet
//! transform classifier (transform followed by a random forest).

mod quality;
mod search;
mod stc;

pub use quality::{best_binary_split, shapelet_quality};
pub use search::{random_shapelet_search, subsequence_distance, Shapelet, ShapeletSearch};
pub use stc::{shapelet_transform, stc_fit, StcConfig, StcContract, StcModel};
