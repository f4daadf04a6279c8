use thiserror::Error;

use crate::model::ParamRange;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The phase of one or more chains is undefined because the summed
    /// snapshots are exactly zero there.
    #[error("degenerate estimate: phase undefined for chain(s) {chains:?}")]
    DegenerateEstimate { chains: Vec<usize> },

    #[error("numerical domain error: {0}")]
    NumericalDomain(String),

    #[error("singular Fisher information for {range:?} (condition number {condition:e})")]
    SingularFim { range: ParamRange, condition: f64 },

    #[error("degenerate Schur complement: {0}")]
    DegenerateSchur(String),

    #[error("invalid config: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidArgument(_) | Error::Config(_) => 1,
            Error::DegenerateEstimate { .. }
            | Error::NumericalDomain(_)
            | Error::SingularFim { .. }
            | Error::DegenerateSchur(_) => 2,
            Error::Io(_) => 3,
            Error::Csv(e) => match e.kind() {
                csv::ErrorKind::Io(_) => 3,
                _ => 1,
            },
        }
    }
}
