use thiserror::Error;

/// Errors raised by the optimizers, the benchmark suite and the experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("point has {got} coordinates but the objective expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("evaluation budget of {budget} exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("invalid dimension {0}: at least 2 is required")]
    InvalidDimension(usize),

    #[error("invalid bounds [{lower}, {upper}]: lower must be strictly below upper")]
    InvalidBounds { lower: f64, upper: f64 },

    #[error("unsupported level count {0}: orthogonal arrays are built for prime levels only")]
    UnsupportedLevelCount(u32),

    #[error("orthogonal array would need {rows} rows, above the cap of {cap}")]
    TooManyRows { rows: u64, cap: usize },

    #[error(
        "orthogonal array has {factors} factors, fewer than the {dimension} dimensions requested"
    )]
    InsufficientFactors { factors: usize, dimension: usize },

    #[error("invalid population size {0}: must be even and at least 6")]
    InvalidPopulation(usize),

    #[error("archive {0} is empty")]
    EmptyArchive(&'static str),

    #[error("elite subgroup of size {0} is too small for mutation (need at least 3)")]
    DegenerateSubgroup(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("no data for {0}")]
    MissingData(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
