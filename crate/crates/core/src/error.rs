use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A value violates the precondition of an operation or type.
    #[error("invalid {what}: {reason}")]
    InvalidInput { what: &'static str, reason: String },

    #[error("frequency {f_hz} Hz is outside the valid band [{f_min_hz}, {f_max_hz}] Hz of medium '{medium}'")]
    OutOfBand {
        medium: String,
        f_hz: f64,
        f_min_hz: f64,
        f_max_hz: f64,
    },

    #[error("unknown medium '{id}' (available: {})", .available.join(", "))]
    UnknownMedium { id: String, available: Vec<String> },

    #[error("unknown particle population '{id}' (available: {})", .available.join(", "))]
    UnknownParticle { id: String, available: Vec<String> },

    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },

    #[error("{origin}: record '{id}' violates `{rule}`")]
    InvalidRecord {
        origin: String,
        id: String,
        rule: String,
    },

    #[error("duplicate id '{id}' (defined in {first} and {second})")]
    DuplicateId {
        id: String,
        first: String,
        second: String,
    },

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            what,
            reason: reason.into(),
        }
    }

    /// True for failures caused by data files (parsing, record validation, IO).
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::InvalidRecord { .. } | Error::DuplicateId { .. } | Error::Io { .. }
        )
    }
}
