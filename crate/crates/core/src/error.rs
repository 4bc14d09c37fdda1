use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("LP is infeasible: {0}")]
    Infeasible(String),
    #[error("LP is unbounded")]
    Unbounded,
    #[error("unknown configuration `{0}`")]
    UnknownConfig(String),
    #[error("unknown reference key `{0}`")]
    UnknownKey(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("contact graph is empty")]
    EmptyContactGraph,
    #[error("unsupported value: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("rank drop beyond sweep range at c = {0}; needs manual review")]
    RankDropBeyondSweep(f64),
}
