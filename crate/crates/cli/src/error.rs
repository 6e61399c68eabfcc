use std::fmt;
use std::path::Path;

use glass_sim::GlassError;
use rft_core::RftError;
use trainer::TrainerError;

/// Failure classes with the exit codes of the command-line contract:
/// 2 usage or configuration, 3 resource bound, 4 numerical failure.
///
/// Filesystem problems land in [`CliError::Usage`]: the offending path came
/// from the command line, so the fix is on the caller's side.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
            CliError::Numerical(_) => 4,
        }
    }

    pub fn io(context: &str, path: &Path, err: std::io::Error) -> Self {
        CliError::Usage(format!("cannot {context} {}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Resource(msg) => write!(f, "resource bound: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical failure: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<GlassError> for CliError {
    fn from(err: GlassError) -> Self {
        match err {
            GlassError::TensorTooLarge { .. }
            | GlassError::EnumerationTooLarge { .. }
            | GlassError::HessianTooLarge { .. } => CliError::Resource(err.to_string()),
            GlassError::Diverged { .. } => CliError::Numerical(err.to_string()),
            _ => CliError::Usage(err.to_string()),
        }
    }
}

impl From<RftError> for CliError {
    fn from(err: RftError) -> Self {
        CliError::Usage(err.to_string())
    }
}

impl From<TrainerError> for CliError {
    fn from(err: TrainerError) -> Self {
        match err {
            TrainerError::Glass(inner) => inner.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
        assert_eq!(CliError::Resource(String::new()).exit_code(), 3);
        assert_eq!(CliError::Numerical(String::new()).exit_code(), 4);
    }

    #[test]
    fn glass_errors_split_by_class() {
        let too_large = GlassError::EnumerationTooLarge { n: 30, max: 24 };
        assert_eq!(CliError::from(too_large).exit_code(), 3);
        let diverged = GlassError::Diverged { step: 7, eps: 2e6 };
        assert_eq!(CliError::from(diverged).exit_code(), 4);
        let mismatch = GlassError::DimensionMismatch {
            expected: 4,
            got: 3,
        };
        assert_eq!(CliError::from(mismatch).exit_code(), 2);
    }
}
