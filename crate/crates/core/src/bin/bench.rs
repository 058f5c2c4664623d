//! Command-line experiment runner: `bench run`, `bench compare`, `bench distance`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tsc_core::data::parse_ts_file;
use tsc_core::distance::{DistanceSpec, Measure};
use tsc_core::eval::{compare_results_dir, run_experiment, ClassifierFlags, ExperimentSpec, Metric};
use tsc_core::{par, Error, Result};

#[derive(Parser)]
#[command(name = "bench", about = "Time series classification experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fit a classifier on one resample of a problem and write its predictions.
    Run(RunArgs),
    /// Compare classifiers from a results directory.
    Compare(CompareArgs),
    /// Print the distance between two cases of a .ts file.
    Distance(DistanceArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    classifier: String,
    #[arg(long)]
    data_dir: PathBuf,
    #[arg(long)]
    problem: String,
    #[arg(long, default_value_t = 0)]
    resample: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "results")]
    out: PathBuf,
    /// Worker thread cap (0 = all cores).
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    contract_minutes: Option<f64>,
    #[arg(long)]
    n_trees: Option<usize>,
    #[arg(long)]
    n_parameter_samples: Option<usize>,
    #[arg(long)]
    max_ensemble_size: Option<usize>,
    #[arg(long)]
    max_candidates: Option<usize>,
    #[arg(long)]
    forest_trees: Option<usize>,
    #[arg(long)]
    n_stump_evaluations: Option<usize>,
    #[arg(long)]
    proportion_of_param_options: Option<f64>,
    #[arg(long)]
    proportion_of_train_in_param_finding: Option<f64>,
    /// Distance parameter for nn-* classifiers, repeatable: `--param w=0.1`.
    #[arg(long = "param")]
    params: Vec<String>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long)]
    results_dir: PathBuf,
    /// Comma-separated classifier names.
    #[arg(long, value_delimiter = ',')]
    classifiers: Vec<String>,
    #[arg(long, default_value = "acc")]
    metric: String,
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistanceArgs {
    #[arg(long)]
    measure: String,
    /// `k=v[,k=v]`
    #[arg(long, default_value = "")]
    params: String,
    #[arg(long)]
    file: PathBuf,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    j: usize,
}

fn parse_param(s: &str) -> Result<(String, f64)> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {s:?}")))?;
    let v = v
        .trim()
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("non-numeric value in {s:?}")))?;
    Ok((k.trim().to_string(), v))
}

fn run(args: RunArgs) -> Result<()> {
    if args.threads > 0 {
        par::set_threads(args.threads);
    }
    let flags = ClassifierFlags {
        n_trees: args.n_trees,
        contract_minutes: args.contract_minutes,
        n_parameter_samples: args.n_parameter_samples,
        max_ensemble_size: args.max_ensemble_size,
        max_candidates: args.max_candidates,
        forest_trees: args.forest_trees,
        n_stump_evaluations: args.n_stump_evaluations,
        proportion_of_param_options: args.proportion_of_param_options,
        proportion_of_train_in_param_finding: args.proportion_of_train_in_param_finding,
        params: args.params.iter().map(|p| parse_param(p)).collect::<Result<_>>()?,
    };
    let outcome = run_experiment(&ExperimentSpec {
        classifier: args.classifier,
        data_dir: args.data_dir,
        problem: args.problem,
        resample_id: args.resample,
        seed: args.seed,
        out_dir: args.out,
        flags,
    })?;
    println!("{}", outcome.summary_line());
    Ok(())
}

fn compare(args: CompareArgs) -> Result<()> {
    let metric: Metric = args.metric.parse()?;
    let summary = compare_results_dir(&args.results_dir, &args.classifiers, metric, args.alpha)?;
    let csv = summary.to_csv();
    match args.out {
        Some(path) => {
            std::fs::write(&path, csv)?;
            println!(
                "metric={} classifiers={} datasets={} cliques={} out={}",
                metric.name(),
                summary.classifiers.len(),
                summary.datasets.len(),
                summary.cliques.len(),
                path.display()
            );
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn distance(args: DistanceArgs) -> Result<()> {
    let measure: Measure = args.measure.parse()?;
    let spec = DistanceSpec::parse(measure, &args.params)?;
    let data = parse_ts_file(&std::fs::read_to_string(&args.file)?)?;
    for idx in [args.i, args.j] {
        if idx >= data.len() {
            return Err(Error::InvalidParameter(format!("case {idx} out of range (0..{})", data.len())));
        }
    }
    println!("{}", spec.distance(data.series(args.i), data.series(args.j))?);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Run(a) => run(a),
        Command::Compare(a) => compare(a),
        Command::Distance(a) => distance(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
