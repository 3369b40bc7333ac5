use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("imaginary-shift Casoratian needs a nonzero gamma")]
    ZeroGamma,
    #[error("window too small: need at least {required} grid points, have {available}")]
    WindowUnderflow { required: usize, available: usize },
    #[error("seed functions are linearly dependent: {0}")]
    LinearDependence(String),
    #[error("negative radicand in {what} at x = {x}")]
    NegativeRadicand { what: String, x: usize },
    #[error("singular deformation: {what} vanishes at x = {x}")]
    SingularDeformation { what: String, x: usize },
    #[error("coefficient budget exceeded: {bits} bits > limit {limit}")]
    BudgetExceeded { bits: u64, limit: u64 },
    #[error("exponent pairs differ; sum leaves the exp-polynomial class")]
    ExponentMismatch,
    #[error("state {0} is deleted by the index set")]
    StateDeleted(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("no admissible real sample point for the sign check")]
    NoSamplePoint,
    #[error("assumption violated: {0}")]
    AssumptionViolation(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
