//! CART decision trees, bootstrap random forests and ensemble voting.

mod cart;
mod forest;
mod matrix;
mod vote;

pub use cart::{fit_decision_tree, predict_proba_tree, DecisionTree, MaxFeatures, SplitCriterion, TreeConfig, TreeNode};
pub use forest::{fit_random_forest, ForestModel};
pub use matrix::FeatureMatrix;
pub use vote::{argmax, ensemble_predict_proba, VoteMode};
