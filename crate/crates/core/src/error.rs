use thiserror::Error;

/// Where in a text input a parse error occurred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// Byte offset into a single-line input.
    Offset(usize),
    /// One-based line number of a line-oriented file.
    Line(usize),
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Offset(o) => write!(f, "offset {o}"),
            Location::Line(l) => write!(f, "line {l}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid name `{0}`")]
    InvalidName(String),
    #[error("renaming is not injective: {0}")]
    NotInjective(String),
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),
    #[error("{semantics} semantics expects {expected} input")]
    InputMismatch {
        semantics: &'static str,
        expected: &'static str,
    },
    #[error("invalid register automaton: {0}")]
    InvalidModel(String),
    #[error("name pool must not be empty")]
    EmptyPool,
    #[error("search budget of {budget} configurations exceeded")]
    BudgetExceeded { budget: usize },
}

impl Error {
    pub(crate) fn syntax(at: Location, message: impl Into<String>) -> Self {
        Error::Syntax {
            at,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
