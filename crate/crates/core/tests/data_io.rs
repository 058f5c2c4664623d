use std::collections::BTreeMap;

use tsc_core::data::{load_problem, parse_ts_file, stratified_resample, write_ts_file, TimeSeriesDataset};
use tsc_core::Error;

fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data")
}

fn label_counts(d: &TimeSeriesDataset) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for c in d.cases() {
        *m.entry(c.label.clone()).or_insert(0) += 1;
    }
    m
}

#[test]
fn gunpoint_shapes_and_class_counts() {
    let (train, test) = load_problem(data_dir(), "GunPoint").unwrap();
    assert_eq!((train.len(), test.len()), (50, 150));
    assert_eq!(train.series_length(), 150);
    assert_eq!(train.class_labels(), ["1", "2"]);
    let expect = |a: usize, b: usize| BTreeMap::from([("1".to_string(), a), ("2".to_string(), b)]);
    assert_eq!(label_counts(&train), expect(24, 26));
    assert_eq!(label_counts(&test), expect(76, 74));
}

#[test]
fn missing_problem_is_reported() {
    let err = load_problem(data_dir(), "NoSuchProblem").unwrap_err();
    assert!(matches!(err, Error::DatasetNotFound(_)));
}

#[test]
fn written_file_parses_back_identically() {
    let (train, _) = load_problem(data_dir(), "GunPoint").unwrap();
    let again = parse_ts_file(&write_ts_file(&train)).unwrap();
    assert_eq!(again.cases(), train.cases());
    assert_eq!(again.class_labels(), train.class_labels());
}

#[test]
fn resample_keeps_train_class_counts_and_pools_all_cases() {
    let (train, test) = load_problem(data_dir(), "GunPoint").unwrap();
    let r0 = stratified_resample(&train, &test, 0, 7).unwrap();
    assert_eq!(r0.train, train);
    assert_eq!(r0.test, test);

    let pooled = |a: &TimeSeriesDataset, b: &TimeSeriesDataset| {
        let mut all: Vec<String> = a.cases().iter().chain(b.cases()).map(|c| format!("{:?}{}", c.values, c.label)).collect();
        all.sort();
        all
    };
    let original = pooled(&train, &test);
    for id in 1..4 {
        let r = stratified_resample(&train, &test, id, 7).unwrap();
        assert_eq!(label_counts(&r.train), label_counts(&train));
        assert_eq!(r.test.len(), test.len());
        assert_eq!(pooled(&r.train, &r.test), original);
        assert_ne!(r.train, train, "resample {id} reproduced the original split");
        assert_eq!(r, stratified_resample(&train, &test, id, 7).unwrap());
    }
}

#[test]
fn ragged_rows_are_rejected_by_name() {
    let rows = vec![vec![1.0, 2.0, 3.0], vec![1.0, 2.0]];
    let err = TimeSeriesDataset::from_rows("Ragged", rows, &["a", "b"]).unwrap_err();
    assert!(matches!(err, Error::RaggedInput { row: 1, expected: 3, found: 2 }), "{err:?}");
}
