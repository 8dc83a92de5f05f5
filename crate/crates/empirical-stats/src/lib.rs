//! Empirical pair correlation of the angles `θ_γ`, `γ ∈ Γ_I`, `‖γ‖ ≤ Q`.
//!
//! Samples are sorted once; every cumulative curve and histogram is a single sliding
//! window sweep over the sorted values. The `audit` module checks the nested/exterior
//! split of the pairs `(γ, γ′)` exactly, in rational arithmetic.

pub mod audit;
pub mod classify;
pub mod correlation;
pub mod error;
pub mod io;
pub mod samples;

pub use audit::{decomposition_audit, DecompositionAudit};
pub use classify::{classify_matrices, classify_pair, PairClass, Role};
pub use correlation::{
    density, density_histogram, pair_correlation, pair_correlation_with, CorrelationCurve, CurveKind, DensityHistogram,
    Normalization,
};
pub use error::StatsError;
pub use samples::{AngleSampleSet, Convention};
