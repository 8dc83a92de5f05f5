use hyperbolic_core::CoreError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("empty sample set")]
    Empty,
    #[error("samples not sorted at index {0}")]
    Unsorted(usize),
    #[error("grid must be ascending and finite")]
    BadGrid,
    #[error("need at least 3 grid points, got {0}")]
    TooFewPoints(usize),
    #[error("grid spacing is not uniform")]
    NonUniformGrid,
    #[error("bin width and range must be positive")]
    BadBins,
    #[error("a pair needs two distinct elements")]
    SameElement,
    #[error("arcs {0} and {1} cross")]
    ArcsCross(String, String),
    #[error("chain of Farey neighbours did not reach the second arc")]
    BrokenChain,
    #[error(transparent)]
    Core(#[from] CoreError),
}
