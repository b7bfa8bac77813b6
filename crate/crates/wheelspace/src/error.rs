use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WheelError {
    #[error("wheel degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("contraction index ({i},{j}) out of range for wheel degree {degree}")]
    IndexOutOfRange { i: usize, j: usize, degree: usize },
    #[error(transparent)]
    Core(#[from] ncw_core::CoreError),
}
