use thiserror::Error;

use crate::space::SpaceKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {x} lies outside {space}")]
    Domain { x: f64, space: SpaceKind },

    #[error("invalid homeomorphism: {0}")]
    Construction(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown corpus family `{0}`")]
    UnknownFamily(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
