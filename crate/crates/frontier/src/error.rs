use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] frontier_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("empty sample")]
    EmptySample,
    #[error("covariate has zero spread; the bandwidth rule degenerates")]
    DegenerateBandwidth,
    #[error("estimate is undefined at every grid point")]
    AllUndefined,
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{estimator}, n={n}, gamma={gamma}: {source}")]
    Cell {
        estimator: &'static str,
        n: usize,
        gamma: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Process exit code: 1 usage, 2 data, 3 numerical degeneracy.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config { .. } | Error::InvalidConfig(_) => 1,
            Error::Io(_) | Error::Csv { .. } | Error::EmptySample => 2,
            Error::DegenerateBandwidth | Error::AllUndefined => 3,
            Error::Core(e) => match e {
                frontier_core::Error::UndefinedEstimate | frontier_core::Error::UndefinedBand => 3,
                frontier_core::Error::InvalidPoint { .. }
                | frontier_core::Error::OutsideSupport { .. }
                | frontier_core::Error::EmptySample => 2,
                _ => 1,
            },
            Error::Cell { source, .. } => source.exit_code(),
        }
    }
}
