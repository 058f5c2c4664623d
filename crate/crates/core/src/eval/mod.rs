//! Metrics, paired significance tests, classifier comparison, results files
//! and the experiment runner behind the `bench` binary.

mod compare;
mod experiment;
mod metrics;
mod results;
mod stats;

pub use compare::{average_ranks, compare, compare_results_dir, maximal_cliques, ComparisonSummary, Metric, PairComparison};
pub use experiment::{build_classifier, registered_classifiers, run_experiment, ClassifierFlags, ExperimentOutcome, ExperimentSpec};
pub use metrics::{compute_metrics, MetricSet};
pub use results::{results_path, CaseResult, ClassifierResults};
pub use stats::{holm_adjust, holm_correct, wilcoxon_signed_rank, win_draw_loss};
