use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("exponent arithmetic overflowed")]
    Overflow,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("atom `{0}` has no assigned word")]
    UnassignedAtom(String),

    #[error("parameter must be nonzero: {0}")]
    ZeroParameter(&'static str),

    #[error("malformed table: {0}")]
    Malformed(String),

    #[error("table entry {value} at ({row}, {col}) is out of range for size {size}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
}

impl Error {
    pub(crate) fn syntax(pos: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            message: message.into(),
        }
    }

    /// True for failures caused by exhausting a configured bound rather than
    /// by bad input.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Overflow | Error::ResourceLimit(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
