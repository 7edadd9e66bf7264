use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("ill-defined group map: {0}")]
    IllDefinedMap(String),
    #[error("degree {degree} out of range (reliable up to {reliable_up_to})")]
    DegreeOutOfRange {
        degree: usize,
        reliable_up_to: usize,
    },
    #[error("opaque differentials block page turning at {0:?}")]
    OpaqueDifferential(Vec<(usize, usize)>),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("tower file: {0}")]
    TowerFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
