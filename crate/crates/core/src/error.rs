use thiserror::Error;

/// Failure classes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("index out of range: {0}")]
    Index(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("construction error: {0}")]
    Construction(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    /// A relation among generators that the proposed images do not respect.
    #[error("extension of relation {left} yields {lhs} \u{2260} {rhs}")]
    Relation {
        left: String,
        right: String,
        lhs: usize,
        rhs: usize,
    },
}

impl Error {
    /// True for errors that come from running out of search budget.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
