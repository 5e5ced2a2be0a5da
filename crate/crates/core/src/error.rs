use thiserror::Error;

/// Errors raised by fitting, testing, simulation and experiment routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("insufficient data: need more than {needed} observations, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("squared residuals have zero variance; the LM statistic is undefined")]
    DegenerateResiduals,

    #[error("regressor column {dimension} has zero spread; bandwidth would be zero")]
    DegenerateBandwidth { dimension: usize },

    #[error("kernel weights vanish at observation {index}")]
    KernelUnderflow { index: usize },

    #[error("cross-validation undefined for every candidate bandwidth")]
    CrossValidationUndefined,

    #[error("unknown DGP preset `{0}`")]
    UnknownPreset(String),

    #[error("non-stationary error specification: {0}")]
    NonStationary(String),

    #[error("cannot parse mean model `{0}`")]
    ModelParse(String),

    #[error(
        "cell ({dgp}, {model}, T={t}) failed: {failures} of {replications} replications errored"
    )]
    CellFailed {
        dgp: String,
        model: String,
        t: usize,
        failures: usize,
        replications: usize,
    },

    #[error("no critical value for cell ({dgp}, {model}, T={t})")]
    MissingCriticalValue {
        dgp: String,
        model: String,
        t: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
