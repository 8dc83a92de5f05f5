use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExteriorError {
    #[error("coordinates ({0}, {1}) outside (0,1]^2")]
    OutOfSquare(f64, f64),
    #[error("point ({0}, {1}) is not in the triangle x + y > 1")]
    NotInTriangle(f64, f64),
    #[error("chain breaks down at index {index}: L = {value}")]
    ChainBreakdown { index: i64, value: f64 },
    #[error("invalid argument: {0}")]
    BadArgument(String),
}
