use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // dataset parsing and construction
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: expected {expected} values, found {found}")]
    LengthMismatch {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: label {label:?} is not declared in @classLabel")]
    UnknownLabel { line: usize, label: String },
    #[error("line {line}: value {value:?} is not a finite number")]
    NonNumericValue { line: usize, value: String },
    #[error("multivariate series are not supported")]
    MultivariateUnsupported,
    #[error("ragged input: row {row} has length {found}, expected {expected}")]
    RaggedInput {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid dataset: {0}")]
    InvalidDataset(String),
    #[error("datasets are incompatible: {0}")]
    IncompatibleDatasets(String),
    #[error("dataset not found: {0}")]
    DatasetNotFound(String),
    #[error("i/o error: {0}")]
    Io(String),

    // numeric kernels
    #[error("interval of length {0} is too short (need at least 2)")]
    IntervalTooShort(usize),
    #[error("series of length {found} is too short (need at least {required})")]
    SeriesTooShort { found: usize, required: usize },

    // learners
    #[error("empty training set")]
    EmptyTrainingSet,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inconsistent dimensions among ensemble members")]
    InconsistentDimensions,
    #[error("series lengths differ: {0} vs {1}")]
    SeriesLengthMismatch(usize, usize),
    #[error("interval of minimum length {min_length} does not fit a series of length {series_length}")]
    IntervalInfeasible {
        series_length: usize,
        min_length: usize,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    // distances
    #[error("measure {0} has no parameter grid")]
    NotTunable(String),
    #[error("parameter grid is empty")]
    GridEmpty,
    #[error("unknown distance measure {0:?}")]
    UnknownMeasure(String),
    #[error("invalid distance parameter: {0}")]
    InvalidParameter(String),

    // dictionary
    #[error("breakpoints have not been fitted for this word length")]
    UnfittedBreakpoints,
    #[error("window length {window} exceeds series length {series}")]
    WindowTooLong { window: usize, series: usize },
    #[error("no viable BOSS parameters for series length {0}")]
    NoViableParameters(usize),

    // shapelets
    #[error("shapelet of length {shapelet} is longer than series of length {series}")]
    ShapeletTooLong { shapelet: usize, series: usize },
    #[error("at least two classes are required")]
    DegenerateLabels,
    #[error("contract expired before any candidate was evaluated")]
    ContractTooSmall,

    // proximity forest
    #[error("node holds a single class")]
    SingleClassNode,

    // evaluation
    #[error("results are empty")]
    EmptyResults,
    #[error("too few non-zero differences ({0}, need at least 5)")]
    TooFewSamples(usize),
    #[error("unknown classifier {0:?}")]
    UnknownClassifier(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
