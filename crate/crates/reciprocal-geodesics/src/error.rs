use hyperbolic_core::CoreError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeodesicError {
    #[error("matrix with trace {0} is not hyperbolic")]
    NotHyperbolic(i128),
    #[error("{0} is not a positive nonsquare")]
    BadDiscriminant(i128),
    #[error("alpha_max = {0} must exceed 1")]
    BadAlphaMax(f64),
    #[error(transparent)]
    Core(#[from] CoreError),
}
