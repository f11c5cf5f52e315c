use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("dimension {got} is below the minimum {min}")]
    DimTooSmall { min: usize, got: usize },
    #[error("matrix is not in the image of the complex embedding (deviation {deviation:e})")]
    MalformedMatrix { deviation: f64 },
    #[error("not a unit imaginary quaternion (norm {norm})")]
    NotUnitImaginary { norm: f64 },
    #[error("{what} failed to converge")]
    ConvergenceFailure { what: &'static str },
    #[error("truncation too coarse: need dimension {required}")]
    TruncationTooCoarse { required: usize },
    #[error("moment test failed at m = {m} (relative error {error:e})")]
    MomentTestFailure { m: usize, error: f64 },
    #[error("non-finite integrand at node {node}")]
    NonFiniteIntegrand { node: usize },
    #[error("element is not in the image of the slice embedding (deviation {deviation:e})")]
    NotInImage { deviation: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
