use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource error: {what} needs {needed} evaluations, budget is {budget}")]
    Resource {
        what: String,
        needed: String,
        budget: u64,
    },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
