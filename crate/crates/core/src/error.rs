use thiserror::Error;

/// Errors raised by the algebraic, sequence and topology layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands were built over algebras with different atom counts.
    #[error("algebra mismatch: P({left}) vs P({right})")]
    AlgebraMismatch { left: u8, right: u8 },

    #[error("atom count must be in 1..={max}, got {requested}")]
    AtomCount { requested: usize, max: u8 },

    #[error("element word {word} is outside the carrier of P({atoms})")]
    ElementOutOfRange { word: u64, atoms: u8 },

    #[error("{0}")]
    Structural(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A computation was requested past one of the enumeration caps.
    #[error("{what} needs atom count <= {cap}, got {requested}")]
    ResourceCap {
        what: &'static str,
        cap: u8,
        requested: u8,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
