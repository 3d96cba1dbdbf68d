use std::fmt;

/// Errors surfaced by the library.
#[derive(Debug, Clone)]
pub enum Error {
    /// Malformed input: configuration, cluster data, field data.
    Input(String),
    /// A structurally valid input that the implemented theory does not
    /// cover, e.g. a non-transverse covering unbranched along the line at
    /// infinity.
    Unsupported(String),
    /// A computation exceeded its configured budget.
    Budget(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::Budget(msg.into())
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Unsupported(_) | Error::Budget(_) => 2,
        }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(m) => write!(f, "invalid input: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Budget(m) => write!(f, "budget exceeded: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
