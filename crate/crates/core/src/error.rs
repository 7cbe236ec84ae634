use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// The variants map one-to-one onto the CLI exit codes: input problems exit
/// with 2, enumeration caps with 3, and numerical or internal failures with 1.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("cone is not pointed; it contains the line spanned by {line:?}")]
    NotPointed { line: Vec<String> },

    #[error("cone is not full-dimensional: generators span dimension {rank} < {dim}")]
    NotFullDimensional { rank: usize, dim: usize },

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("zero functor: {0}")]
    ZeroFunctor(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SizeCap(_) => 3,
            Error::Numerical(_) | Error::Validation(_) => 1,
            _ => 2,
        }
    }

    /// Short machine-readable tag for error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::Input(_) => "input",
            Error::NotPointed { .. } => "not-pointed",
            Error::NotFullDimensional { .. } => "not-full-dimensional",
            Error::SizeCap(_) => "size-cap",
            Error::ZeroFunctor(_) => "zero-functor",
            Error::Numerical(_) => "numerical",
            Error::Validation(_) => "validation",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
