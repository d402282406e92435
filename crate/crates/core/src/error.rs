use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameter combination for an operation.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A vertex or shifted vertex fell outside `1..=n`.
    #[error("range error: {0}")]
    Range(String),

    /// An internal structural assumption did not hold.
    #[error("structural error: {0}")]
    Structural(String),

    /// The instance exceeds a configured size limit.
    #[error("resource limit exceeded: {what} = {count} (limit {limit})")]
    Resource {
        what: String,
        count: u64,
        limit: u64,
    },

    /// An edge could not be traced back to a packing generator.
    #[error("decode failure: {0}")]
    Decode(String),

    /// Input violated an operation's precondition; the witness explains why.
    #[error("precondition violated: {message} (witness {witness:?})")]
    Precondition {
        message: String,
        witness: Vec<u32>,
    },

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parameter(_) => "parameter",
            Error::Range(_) => "range",
            Error::Structural(_) => "structural",
            Error::Resource { .. } => "resource",
            Error::Decode(_) => "decode",
            Error::Precondition { .. } => "precondition",
            Error::Format(_) => "format",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }

    /// Whether the error reports inputs outside an operation's domain
    /// rather than a failure while computing.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::Parameter(_) | Error::Precondition { .. } | Error::Range(_))
    }

    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
