use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RepError {
    #[error("bad dimension vector: {0}")]
    BadDim(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("diff arrow {0} has no matrix")]
    DiffArrow(String),
    #[error("the bracket is defined on even variables only; found {0}")]
    OddVariable(String),
    #[error("wheel element mixes degrees {0:?}")]
    MixedDegree(Vec<usize>),
}
