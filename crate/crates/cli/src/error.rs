use std::path::PathBuf;

use thiserror::Error;

/// Failures of a command, each tied to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] cmc_core::Error),
    /// A computation finished and its verdict was negative.
    #[error("{0}")]
    Verdict(String),
}

impl CliError {
    /// 1 for a negative domain verdict, 2 for malformed input, 3 for I/O.
    pub fn exit_code(&self) -> i32 {
        use cmc_core::Error as E;
        match self {
            CliError::Io { .. } => 3,
            CliError::Usage(_) => 2,
            CliError::Verdict(_) => 1,
            CliError::Core(e) => match e {
                E::Json(_)
                | E::InvalidInput(_)
                | E::Dimension(_)
                | E::NotOnCurve { .. }
                | E::SingularPoint { .. }
                | E::PointCorruption(_)
                | E::TierRequired
                | E::DegenerateConfiguration(_)
                | E::ZeroIdeal
                | E::DivisionByZero
                | E::Pole(_) => 2,
                E::SingularCurve(_)
                | E::NonInvertible(_)
                | E::RelationFailure(_)
                | E::NotAUnit(_)
                | E::NotPrimaryDecomposable { .. }
                | E::Internal(_) => 1,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Verdict("x".into()).exit_code(), 1);
        assert_eq!(CliError::from(cmc_core::Error::Json("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(cmc_core::Error::SingularCurve("x".into())).exit_code(), 1);
        let io = CliError::Io {
            path: "a".into(),
            source: std::io::Error::other("x"),
        };
        assert_eq!(io.exit_code(), 3);
    }
}
