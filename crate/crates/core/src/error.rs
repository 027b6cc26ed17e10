use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{name} must be {requirement}, got {value}")]
    Domain {
        name: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty sample")]
    EmptySample,
    #[error("sample point {index} is invalid: {reason}")]
    InvalidPoint { index: usize, reason: &'static str },
    #[error("sample point {index} lies outside the support")]
    OutsideSupport { index: usize },
    #[error("frontier estimate is undefined: no kernel mass at the evaluation point")]
    UndefinedEstimate,
    #[error("confidence band is undefined: density estimate vanishes at the evaluation point")]
    UndefinedBand,
    #[error("invalid frontier knots: {0}")]
    InvalidKnots(&'static str),
}

impl Error {
    pub(crate) fn domain(name: &'static str, requirement: &'static str, value: f64) -> Self {
        Error::Domain {
            name,
            requirement,
            value,
        }
    }
}
