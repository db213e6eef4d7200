//! Error type shared by every module.

use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A tableau violates its shape or monotonicity constraints.
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    /// Two entries that must be distinct are equal.
    #[error("tied entries: {0}")]
    Ties(String),
    /// A tableau on the infinite staircase is not admissible for the local algorithm.
    #[error("admissibility error: {0}")]
    Admissibility(String),
    /// No empty bounding column was found around a requested window.
    #[error("window error: {0}")]
    Window(String),
    /// Contour parameters violate the separation requirements.
    #[error("contour configuration error: {0}")]
    Contour(String),
    /// A function was evaluated at one of its poles.
    #[error("pole at {0}")]
    Pole(String),
    /// A numerical procedure failed its own accuracy check.
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    /// True for failures of a numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
