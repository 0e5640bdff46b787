use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse {what} at position {position}: {message}")]
    Parse {
        what: &'static str,
        position: usize,
        message: String,
    },
    #[error("invalid {what}: {message}")]
    Invalid { what: &'static str, message: String },
    #[error("gap {gap} is not a global descent of {permutation}")]
    NotGlobalDescent { gap: usize, permutation: String },
    #[error("permutation {0} is not dominant")]
    NotDominant(String),
    #[error("node ({x},{y}) cannot be rotated")]
    NotRotatable { x: usize, y: usize },
    #[error("leading term of the zero sum is undefined")]
    ZeroSum,
    #[error("path {0} leaves the diagonal more than once")]
    MultipleExcursions(String),
    #[error("resource bound exceeded: {0}")]
    ResourceBound(String),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(what: &'static str, position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            what,
            position,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(what: &'static str, message: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            message: message.into(),
        }
    }
}
