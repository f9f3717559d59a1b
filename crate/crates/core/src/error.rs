use thiserror::Error;

/// Errors produced by the solvers, constructors and format readers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("capacity exceeded: {what} needs {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// The node budget ran out before the query finished. `lower` and `upper`
    /// carry whatever bounds on the answer were established so far.
    #[error("search budget of {limit} nodes exhausted (bounds: {lower:?}..={upper:?})")]
    Budget {
        limit: u64,
        lower: Option<u64>,
        upper: Option<u64>,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contract violated: {0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }

    /// Attach bounds to a budget error; other errors pass through untouched.
    pub fn with_bounds(self, lo: Option<u64>, hi: Option<u64>) -> Self {
        match self {
            Error::Budget { limit, .. } => Error::Budget {
                limit,
                lower: lo,
                upper: hi,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
