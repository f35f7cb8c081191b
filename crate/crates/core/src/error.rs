use thiserror::Error;

/// Everything that can go wrong between parsing a function and rendering a verdict.
#[derive(Debug, Error)]
pub enum Error {
    #[error("spin index {spin} out of range for a {n_spins}-spin system")]
    SpinOutOfRange { spin: usize, n_spins: usize },

    #[error("two-spin operation needs distinct spins, got {0} twice")]
    SameSpin(usize),

    #[error("rotation axis must be a unit vector (norm {norm})")]
    NonUnitAxis { norm: f64 },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("deviation operator must be traceless (|Tr| = {trace:e})")]
    NotTraceless { trace: f64 },

    #[error("operator dimension {found} does not match {expected}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid spin system: {0}")]
    InvalidSystem(String),

    #[error("no usable coupling between spins {i} and {j}; routing required")]
    RouteRequired { i: usize, j: usize },

    #[error("no coupling path connects spins {i} and {j}")]
    RoutingInfeasible { i: usize, j: usize },

    #[error("coupling topology is disconnected: {0}")]
    DisconnectedTopology(String),

    #[error("function {mask:#x} is neither constant nor balanced")]
    NotAdmissible { mask: u64 },

    #[error("decomposition has a term of degree {degree}; only quadratic and lower gates exist")]
    HigherDegreeTerm { degree: u32 },

    #[error("{0}-bit functions are not supported here")]
    UnsupportedBits(usize),

    #[error("cannot parse function spec: {0}")]
    Parse(String),

    #[error("T2 relaxation requested but the system has no T2 values")]
    MissingRelaxationTimes,

    #[error("spectra come from different systems or binning: {0}")]
    SpectrumMismatch(String),

    #[error("spectra are not conclusive: {0}")]
    Inconclusive(String),

    #[error("molecule file: {0}")]
    Io(#[from] std::io::Error),

    #[error("molecule json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
