//! Symbolic Fourier approximation words, BOSS histograms, and the BOSS and
//! cBOSS ensembles built from them.

mod ensemble;
mod histogram;
mod individual;
mod sfa;

pub use ensemble::{
    boss_ensemble_fit, boss_parameter_space, retain_by_accuracy, BossEnsembleConfig, BossEnsembleModel, BuildTelemetry,
};
pub use histogram::{boss_distance, boss_distance_bounded, series_to_histogram, WordHistogram};
pub use individual::{boss_individual_fit, loo_accuracy, BossIndividualModel};
pub use sfa::{fit_breakpoints, sfa_coefficients, sfa_word, Breakpoints, SfaParams};
