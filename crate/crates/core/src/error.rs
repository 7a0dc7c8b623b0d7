use thiserror::Error;

/// Errors raised across the crate.
///
/// Budget and truncation failures are kept apart from malformed input so the
/// command line front end can map them onto distinct exit statuses.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("group too large: closure exceeded order bound {bound}")]
    TooLarge { bound: usize },

    #[error("budget exceeded: {what} (largest feasible: {largest_feasible})")]
    Budget { what: String, largest_feasible: String },

    #[error("truncation overflow: weight {weight} exceeds window {window}")]
    Truncation { weight: usize, window: usize },

    #[error("degree overflow: degree {degree} exceeds truncation {top}")]
    DegreeOverflow { degree: usize, top: usize },

    #[error("{0} is not an element of the monoid")]
    NotMember(String),

    #[error("{0}")]
    NotInvertible(String),

    #[error("unknown verdict within bound {bound}: {what}")]
    Unknown { what: String, bound: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Exit status for the command line: 2 for exhausted budgets and
    /// truncations, 3 for malformed input.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooLarge { .. }
            | Error::Budget { .. }
            | Error::Truncation { .. }
            | Error::DegreeOverflow { .. }
            | Error::Unknown { .. } => 2,
            _ => 3,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Malformed(_) => "malformed",
            Error::DegreeMismatch { .. } => "degree_mismatch",
            Error::TooLarge { .. } => "too_large",
            Error::Budget { .. } => "budget",
            Error::Truncation { .. } => "truncation",
            Error::DegreeOverflow { .. } => "degree_overflow",
            Error::NotMember(_) => "not_member",
            Error::NotInvertible(_) => "not_invertible",
            Error::Unknown { .. } => "unknown",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
