use std::path::PathBuf;
use std::process::{Command, Output};

mod common;

use common::random_dataset;
use tsc_core::data::{load_problem, write_ts_file};
use tsc_core::distance::msm_distance;

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bench")).args(args).output().unwrap()
}

fn run_gunpoint(classifier: &str, out: &str, extra: &[&str]) -> Output {
    let data = data_dir();
    let mut args = vec!["run", "--classifier", classifier, "--data-dir", data.to_str().unwrap(), "--problem", "GunPoint", "--out", out];
    args.extend_from_slice(extra);
    bench(&args)
}

#[test]
fn tsf_on_gunpoint_writes_one_line_per_test_case() {
    let out = tempfile::tempdir().unwrap();
    let o = run_gunpoint("tsf", out.path().to_str().unwrap(), &["--n-trees", "50", "--seed", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("classifier=tsf problem=GunPoint resample=0"), "{stdout}");
    let file = out.path().join("tsf/Predictions/GunPoint/testFold0.csv");
    let text = std::fs::read_to_string(file).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "GunPoint,tsf,test,0");
    assert_eq!(lines.len() - 3, 150);
    let acc: f64 = lines[2].split(',').next().unwrap().parse().unwrap();
    assert!(acc > 0.85, "accuracy {acc}");
}

#[test]
fn unknown_classifier_fails_with_message() {
    let out = tempfile::tempdir().unwrap();
    let o = run_gunpoint("nonesuch", out.path().to_str().unwrap(), &[]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("nonesuch"));
}

#[test]
fn distance_subcommand_prints_the_library_value() {
    let file = data_dir().join("GunPoint/GunPoint_TRAIN.ts");
    let o = bench(&["distance", "--measure", "msm", "--params", "c=0.5", "--file", file.to_str().unwrap(), "--i", "0", "--j", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let printed: f64 = String::from_utf8(o.stdout).unwrap().trim().parse().unwrap();
    let (train, _) = load_problem(data_dir(), "GunPoint").unwrap();
    assert_eq!(printed, msm_distance(train.series(0), train.series(7), 0.5).unwrap());

    let o = bench(&["distance", "--measure", "msm", "--params", "c=0.5", "--file", file.to_str().unwrap(), "--i", "0", "--j", "50"]);
    assert!(!o.status.success());
}

#[test]
fn compare_subcommand_writes_summary() {
    let out = tempfile::tempdir().unwrap();
    let data = out.path().join("data");
    let results = out.path().join("results");
    let problems: Vec<String> = (0..5).map(|d| format!("Toy{d}")).collect();
    for (d, name) in problems.iter().enumerate() {
        let dir = data.join(name);
        std::fs::create_dir_all(&dir).unwrap();
        let seed = d as u64;
        let train = random_dataset(12, 20, 2, seed);
        let test = random_dataset(20, 20, 2, seed + 50);
        std::fs::write(dir.join(format!("{name}_TRAIN.ts")), write_ts_file(&train)).unwrap();
        std::fs::write(dir.join(format!("{name}_TEST.ts")), write_ts_file(&test)).unwrap();
        for clf in ["nn-euclidean", "nn-dtw"] {
            let o = bench(&["run", "--classifier", clf, "--data-dir", data.to_str().unwrap(), "--problem", name, "--out", results.to_str().unwrap()]);
            assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        }
    }
    let summary = out.path().join("summary.csv");
    let o = bench(&["compare", "--results-dir", results.to_str().unwrap(), "--classifiers", "nn-euclidean,nn-dtw", "--out", summary.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(summary).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("problem,nn-euclidean,nn-dtw"));
    for name in &problems {
        assert!(lines.next().unwrap().starts_with(&format!("{name},")));
    }
    assert!(text.contains("\nclassifier,average_rank\n"));
    assert!(text.contains("\nclassifier_a,classifier_b,p_value,holm_adjusted_p,significant,wins,draws,losses\nnn-euclidean,nn-dtw,"));

    let o = bench(&["compare", "--results-dir", results.to_str().unwrap(), "--classifiers", "nn-euclidean,nn-msm"]);
    assert!(!o.status.success());
}
