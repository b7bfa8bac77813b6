use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalcError {
    #[error("{0} is not a double derivation (needs exactly one star arrow)")]
    NotADerivation(String),
}
