use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("InvalidInput: {0}")]
    InvalidInput(String),

    #[error("DegenerateData: {0}")]
    DegenerateData(String),

    /// The horizontal error term divides by the slope.
    #[error("SingularSlope: slope {slope} is zero or too close to zero")]
    SingularSlope { slope: f64 },

    #[error("NonPositiveCorrelation: correlation {rho} is not positive")]
    NonPositiveCorrelation { rho: f64 },

    #[error("ZeroCorrelation: correlation {rho} is indistinguishable from zero")]
    ZeroCorrelation { rho: f64 },

    #[error("SolverFailure: {0}")]
    SolverFailure(String),

    #[error(
        "NoAdmissibleRoot: {reason} (candidates: {candidates:?}, interval: [{lower}, {upper}])"
    )]
    NoAdmissibleRoot {
        reason: String,
        candidates: Vec<f64>,
        lower: f64,
        upper: f64,
    },

    #[error("BracketFailure: {0}")]
    BracketFailure(String),
}

impl Error {
    /// Short variant name, as printed at the start of the message.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::DegenerateData(_) => "DegenerateData",
            Error::SingularSlope { .. } => "SingularSlope",
            Error::NonPositiveCorrelation { .. } => "NonPositiveCorrelation",
            Error::ZeroCorrelation { .. } => "ZeroCorrelation",
            Error::SolverFailure(_) => "SolverFailure",
            Error::NoAdmissibleRoot { .. } => "NoAdmissibleRoot",
            Error::BracketFailure(_) => "BracketFailure",
        }
    }
}
