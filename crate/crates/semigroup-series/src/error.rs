use hyperbolic_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SeriesError {
    #[error("closed form needs xi <= Z_M, got xi = {xi}, Z = {z}")]
    XiAboveZ { xi: f64, z: i128 },
    #[error("xi must be positive, got {0}")]
    NonPositiveXi(f64),
    #[error("xi must be finite and nonnegative, got {0}")]
    BadXi(f64),
    #[error("cutoff must be at least 3, got {0}")]
    BadCutoff(i128),
    #[error("not an element of the semigroup: {0}")]
    NotInSemigroup(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
