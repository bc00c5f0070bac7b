use thiserror::Error;

use crate::embedding::KuratowskiWitness;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("graph is not planar ({:?} subdivision found)", .0.kind)]
    NonPlanar(Box<KuratowskiWitness>),
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
