use std::path::PathBuf;
use std::time::Instant;

use super::results::{CaseResult, ClassifierResults};
use crate::classifier::Classifier;
use crate::data::{load_problem, stratified_resample};
use crate::dictionary::BossEnsembleConfig;
use crate::distance::{DistanceSpec, Measure};
use crate::error::{Error, Result};
use crate::interval::{ComposedPipelineSpec, RiseConfig, TsfConfig};
use crate::neighbours::{EeConfig, NnConfig, PfConfig};
use crate::shapelet::{StcConfig, StcContract};

/// Candidate budget the `stc` entry uses when no contract is given, so that
/// runs are reproducible by default.
pub const DEFAULT_STC_CANDIDATES: usize = 2000;

/// Optional overrides for classifier defaults. Each applies only to the
/// classifiers that have the corresponding setting.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ClassifierFlags {
    pub n_trees: Option<usize>,
    pub contract_minutes: Option<f64>,
    pub n_parameter_samples: Option<usize>,
    pub max_ensemble_size: Option<usize>,
    pub max_candidates: Option<usize>,
    pub forest_trees: Option<usize>,
    pub n_stump_evaluations: Option<usize>,
    pub proportion_of_param_options: Option<f64>,
    pub proportion_of_train_in_param_finding: Option<f64>,
    /// Distance parameters for `nn-<measure>`, e.g. `("w", 0.1)`.
    pub params: Vec<(String, f64)>,
}

/// Every name accepted by [`build_classifier`].
pub fn registered_classifiers() -> Vec<String> {
    let mut names: Vec<String> = ["tsf", "rise", "tsf-composed", "rise-composed", "boss", "cboss", "stc", "ee", "pf"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend(Measure::ALL.iter().map(|m| format!("nn-{}", m.name())));
    names
}

pub fn build_classifier(name: &str, flags: &ClassifierFlags, seed: u64) -> Result<Box<dyn Classifier>> {
    let unsupported = |flag: &str| Err(Error::InvalidConfig(format!("{flag} does not apply to {name}")));
    if flags.contract_minutes.is_some() && !matches!(name, "cboss" | "stc") {
        return unsupported("--contract-minutes");
    }
    if !flags.params.is_empty() && !name.starts_with("nn-") {
        return unsupported("--param");
    }
    let trees = |default| flags.n_trees.unwrap_or(default);
    Ok(match name {
        "tsf" => Box::new(TsfConfig {
            n_trees: trees(100),
            seed,
            ..TsfConfig::default()
        }),
        "tsf-composed" => Box::new(ComposedPipelineSpec::tsf(trees(100), seed)),
        "rise" => Box::new(RiseConfig {
            n_trees: trees(50),
            seed,
            ..RiseConfig::default()
        }),
        "rise-composed" => Box::new(ComposedPipelineSpec::rise(trees(50), seed)),
        "boss" => Box::new(BossEnsembleConfig::boss(seed)),
        "cboss" => {
            let d = BossEnsembleConfig::cboss(seed);
            Box::new(BossEnsembleConfig {
                n_parameter_samples: flags.n_parameter_samples.unwrap_or(d.n_parameter_samples),
                max_ensemble_size: flags.max_ensemble_size.unwrap_or(d.max_ensemble_size),
                time_limit_minutes: flags.contract_minutes,
                ..d
            })
        }
        "stc" => {
            let contract = match (flags.max_candidates, flags.contract_minutes) {
                (Some(_), Some(_)) => {
                    return Err(Error::InvalidConfig(
                        "--max-candidates and --contract-minutes are exclusive".into(),
                    ))
                }
                (_, Some(m)) => StcContract::Minutes(m),
                (k, None) => StcContract::MaxCandidates(k.unwrap_or(DEFAULT_STC_CANDIDATES)),
            };
            Box::new(StcConfig {
                contract,
                forest_trees: flags.forest_trees.unwrap_or(500),
                seed,
                ..StcConfig::default()
            })
        }
        "ee" => Box::new(EeConfig {
            proportion_of_param_options: flags.proportion_of_param_options.unwrap_or(1.0),
            proportion_of_train_in_param_finding: flags.proportion_of_train_in_param_finding.unwrap_or(1.0),
            seed,
            ..EeConfig::default()
        }),
        "pf" => Box::new(PfConfig {
            n_trees: trees(100),
            n_stump_evaluations: flags.n_stump_evaluations.unwrap_or(5),
            seed,
        }),
        _ => match name.strip_prefix("nn-").map(str::parse::<Measure>) {
            Some(Ok(m)) => Box::new(NnConfig {
                spec: DistanceSpec::from_params(m, &flags.params)?,
            }),
            _ => return Err(Error::UnknownClassifier(name.to_string())),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub classifier: String,
    pub data_dir: PathBuf,
    pub problem: String,
    pub resample_id: u64,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub flags: ClassifierFlags,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentOutcome {
    pub results: ClassifierResults,
    pub path: PathBuf,
}

impl ExperimentOutcome {
    /// One `key=value` line for scripts.
    pub fn summary_line(&self) -> String {
        let r = &self.results;
        format!(
            "classifier={} problem={} resample={} accuracy={:.6} build_time_ns={} test_time_ns={} n_test={} results={}",
            r.classifier_name,
            r.problem_name,
            r.resample_id,
            r.accuracy(),
            r.build_time_ns,
            r.test_time_ns,
            r.cases.len(),
            self.path.display()
        )
    }
}

/// Loads and resamples the problem, fits and tests the classifier (each
/// phase timed separately), and writes the results file.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<ExperimentOutcome> {
    let classifier = build_classifier(&spec.classifier, &spec.flags, spec.seed)?;
    let (train, test) = load_problem(&spec.data_dir, &spec.problem)?;
    let split = stratified_resample(&train, &test, spec.resample_id, spec.seed)?;

    let start = Instant::now();
    let model = classifier.fit(&split.train)?;
    let build_time_ns = start.elapsed().as_nanos();

    let start = Instant::now();
    let probas = model.predict_proba(&split.test)?;
    let test_time_ns = start.elapsed().as_nanos();

    let results = ClassifierResults {
        problem_name: spec.problem.clone(),
        classifier_name: spec.classifier.clone(),
        resample_id: spec.resample_id,
        parameter_text: classifier.describe(),
        cases: split
            .test
            .targets()
            .iter()
            .zip(probas)
            .map(|(&t, p)| CaseResult::new(t, p))
            .collect(),
        build_time_ns,
        test_time_ns,
    };
    let path = results.write(&spec.out_dir)?;
    Ok(ExperimentOutcome { results, path })
}
