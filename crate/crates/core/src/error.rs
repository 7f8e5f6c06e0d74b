use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0}")]
    Conductor(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("refused: {0}")]
    Budget(String),
    #[error("value is not a root of unity of order dividing {0}")]
    NotRootOfUnity(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rewriting system is not confluent: {0}")]
    NotConfluent(String),
    #[error("inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn pre<T: Into<String>>(cond: bool, msg: T) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(msg.into()))
    }
}
