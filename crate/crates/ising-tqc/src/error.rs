use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mode {mode} out of range for a {n_modes}-mode system")]
    ModeOutOfRange { mode: usize, n_modes: usize },

    #[error("modes must be distinct, got {0:?}")]
    RepeatedMode(Vec<usize>),

    #[error("system of {0} modes is too large for this representation")]
    TooManyModes(usize),

    #[error("mode count must be even, got {0}")]
    OddModeCount(usize),

    #[error("observable {0} is not a valid measurement here")]
    InvalidObservable(String),

    #[error("outcome {outcome} of measurement {index} has probability zero")]
    ImpossibleOutcome { index: usize, outcome: u8 },

    #[error("condition refers to measurement t{index} but only {available} outcomes are recorded")]
    UnknownOutcome { index: usize, available: usize },

    #[error("state is not a product across the requested split")]
    NotAProduct,

    #[error("signed permutation is not realizable by braids: {0}")]
    NotInBraidGroup(String),

    #[error("probabilities must be non-negative and sum to one (sum = {sum})")]
    NotNormalized { sum: f64 },

    #[error("state has weight {weight} outside the even-parity code sector")]
    OutsideEvenSector { weight: f64 },

    #[error("initial error {eps0} is not below the threshold {threshold}; the schedule diverges")]
    AboveThreshold { eps0: f64, threshold: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root not bracketed on [{lo}, {hi}]")]
    NotBracketed { lo: f64, hi: f64 },

    #[error("failed to parse circuit: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
