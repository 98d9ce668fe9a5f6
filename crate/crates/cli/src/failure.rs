use std::fmt;
use std::process::ExitCode;

/// A failed run, classified by exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad configuration or input data. Exit code 1.
    Validation(anyhow::Error),
    /// A computed result broke one of its own invariants. Exit code 2.
    Internal(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Validation(_) => ExitCode::from(1),
            Failure::Internal(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Validation(e) => write!(f, "validation failed: {e:#}"),
            Failure::Internal(e) => write!(f, "internal invariant violated: {e:#}"),
        }
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;

/// Shorthand for mapping library errors into [`Failure::Validation`].
pub trait Invalid<T> {
    fn invalid(self) -> Outcome<T>;
    fn invalid_with(self, context: impl FnOnce() -> String) -> Outcome<T>;
}

impl<T, E> Invalid<T> for Result<T, E>
where
    E: std::error::Error + Send + Sync + 'static,
{
    fn invalid(self) -> Outcome<T> {
        self.map_err(|e| Failure::Validation(e.into()))
    }

    fn invalid_with(self, context: impl FnOnce() -> String) -> Outcome<T> {
        self.map_err(|e| Failure::Validation(anyhow::Error::new(e).context(context())))
    }
}
