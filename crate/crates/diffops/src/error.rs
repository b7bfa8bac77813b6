use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffOpError {
    #[error("operators are built from base and star arrows only; {0} is a diff arrow")]
    DiffArrow(String),
    #[error("annihilators need even star arrows; {0} has odd ones")]
    OddAnnihilator(String),
    #[error("{0} is not a double derivation (needs exactly one star arrow)")]
    NotADerivation(String),
    #[error("{0} has star arrows and cannot be a multiplier")]
    NotAMultiplier(String),
    #[error("weil element needs a cyclic word of length 2, got {0}")]
    NotQuadratic(String),
    #[error("the operator has terms of several wheel degrees: {0:?}")]
    MixedDegree(Vec<usize>),
    #[error("{0}")]
    Shape(String),
}
