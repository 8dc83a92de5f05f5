use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("x = {x} is beyond the validated range x <= {limit}; pass --allow-extrapolation")]
    Extrapolation { x: f64, limit: f64 },
    #[error("cache file {0}: {1}")]
    Cache(String, String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Stats(#[from] empirical_stats::StatsError),
    #[error(transparent)]
    Series(#[from] semigroup_series::SeriesError),
    #[error(transparent)]
    Exterior(#[from] exterior_volumes::ExteriorError),
    #[error(transparent)]
    Geodesic(#[from] reciprocal_geodesics::GeodesicError),
}
