use qschubert_core::Error;

/// Failure modes of a command, mapped onto exit codes.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    /// 1 for numerical or mathematical failures, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Rationality(_) | Error::Precision { .. }) => 1,
            _ => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(
            CliError::Core(Error::Degree {
                expected: 8,
                found: 7
            })
            .exit_code(),
            2
        );
        assert_eq!(
            CliError::Core(Error::Rationality("z".into())).exit_code(),
            1
        );
    }
}
