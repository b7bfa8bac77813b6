use thiserror::Error;

#[derive(Debug, Error)]
pub enum BvError {
    #[error("bad connection spec: {0}")]
    BadConnection(String),
    #[error("connection value for {arrow} is malformed: {reason}")]
    BadValue { arrow: String, reason: String },
    #[error("curvature is not A^e-linear on {0}")]
    NotLinear(String),
    #[error("unexpected term shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Core(#[from] ncw_core::CoreError),
    #[error(transparent)]
    Wheel(#[from] ncw_wheel::WheelError),
}
