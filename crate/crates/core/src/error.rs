use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation requires a non-empty word")]
    EmptyWord,

    #[error("directive sequence has no term d_{index}; extend it or give a periodic tail")]
    InsufficientDirective { index: usize },

    #[error("invalid directive sequence: {0}")]
    InvalidDirective(String),

    #[error("invalid word {input:?}: only the letters `a` and `b` are allowed")]
    InvalidWord { input: String },

    #[error("invalid oc-sequence: {0}")]
    InvalidOc(String),

    #[error("no Sturmian word has this oc-sequence (inconsistent at prefix length {position})")]
    NotSturmianOc { position: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length {requested} exceeds the enumeration guard of {max}")]
    LengthGuard { requested: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
