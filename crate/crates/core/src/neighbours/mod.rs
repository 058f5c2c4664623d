//! Nearest-neighbour classification under elastic distances: 1NN, LOOCV
//! parameter tuning, the Elastic Ensemble and the Proximity Forest.

mod ee;
mod nn;
mod pf;
mod tune;

pub use ee::{ee_fit, EeConfig, EeConstituent, EeModel};
pub use nn::{nearest_neighbour, NnConfig, NnModel};
pub use pf::{pf_fit, pf_fit_tree, pf_generate_candidate_split, pf_gini_score, CandidateSplit, PfConfig, PfModel, PfNode};
pub use tune::{loocv_accuracy, loocv_tune, stratified_subset, TuneResult};
