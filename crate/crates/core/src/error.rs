use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax or validation failure at a byte offset of the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, message: impl Into<String>) -> Self {
        Self {
            position,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error {0}")]
    Parse(#[from] ParseError),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid value: {0}")]
    Validation(String),

    /// Two distinct nonzero elements are sent to the same nonzero element.
    #[error("module is not normal: `{first}` and `{second}` both map to `{target}`")]
    NotNormal {
        first: String,
        second: String,
        target: String,
    },

    /// `element` lies in the subset but its image does not.
    #[error("subset is not a submodule: `{element}` maps to `{image}` outside the subset")]
    NotSubmodule { element: String, image: String },

    #[error("gluing error: {0}")]
    Gluing(String),

    #[error("{size} nonzero elements exceeds the enumeration bound {bound}")]
    BoundExceeded { size: usize, bound: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),
}
