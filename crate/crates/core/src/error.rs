use hkit_algebra::AlgebraError;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("point lies on the singular semiaxis of the chart")]
    SingularAxis,
    #[error("angle undefined at this point")]
    UndefinedAngle,
    #[error("zero radius")]
    ZeroRadius,
    #[error("induced metric is degenerate at this point")]
    SingularMetric,
    #[error("dimension {0} is not one of 2, 4, 8")]
    BadDimension(usize),
    #[error("quantum numbers violate mu1 >= mu2 >= mu3 >= 0")]
    OrderingViolation,
    #[error("invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),
    #[error("interpolation failed: {0}")]
    InterpolationFailure(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
