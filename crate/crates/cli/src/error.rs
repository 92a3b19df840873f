use thasym::Error;

/// Failures of a run, each mapped to a fixed exit status.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical degeneracy: {0}")]
    Degenerate(String),
    #[error("invariant failure: {0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Degenerate(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidParams(_)
            | Error::NodeCountTooSmall { .. }
            | Error::TruncationExceeded { .. }
            | Error::OutsideAnnulus { .. }
            | Error::Parse(_)
            | Error::ZeroOnCircle
            | Error::NonzeroWinding(_)
            | Error::ModelNotFactorizable(_)
            | Error::MissingData(_)
            | Error::OnCircle => CliError::Config(msg),
            Error::NormMismatch { .. } => CliError::Invariant(msg),
            _ => CliError::Degenerate(msg),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("cannot write output: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Config(format!("cannot write output: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
