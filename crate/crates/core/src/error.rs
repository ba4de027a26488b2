use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to parse scenario document: {0}")]
    Parse(String),

    #[error("invalid value for `{field}`: {reason}")]
    Invalid { field: String, reason: String },

    #[error("unknown builtin scenario {0} (expected 1-4)")]
    UnknownScenario(u8),

    #[error("position ({x:.1}, {y:.1}) is outside the world extent")]
    OutsideWorld { x: f64, y: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("no MOS curve for {0}")]
    UnknownCurve(String),

    #[error("session is still running")]
    SessionRunning,

    #[error("no results to aggregate")]
    EmptyInput,

    #[error("replication with seed {seed} failed: {source}")]
    Replication {
        seed: u64,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
