//! The free semigroup `𝔖` generated by `L = (1 0; 1 1)` and `R = (1 1; 0 1)`, and the
//! series over it that describe the nested pairs.
//!
//! `M ∈ 𝔖` contributes `B_M(ξ)` to the cumulative pair correlation of the angles and
//! `Vol(S_{M,ξ})` to that of `tan(θ/2)`. Both reduce to one angular integral with an
//! elementary antiderivative (see [`area`]); the adaptive-quadrature route is kept for
//! `B_M` and the closed form serves as its oracle.

pub mod area;
pub mod element;
pub mod error;
pub mod io;
pub mod series;
pub mod volumes;

pub use element::{count_semigroup, enumerate_semigroup, fold_semigroup, SemigroupElement};
pub use error::SeriesError;
pub use series::{g2_log_form, g2_zero, series_b, series_b_prime, series_vol_s, series_vol_s_prime, SeriesResult};
pub use volumes::{
    area_s, b_m, b_m_exact, b_m_prime, b_m_prime_branch, branch_of, vol_s, vol_s_closed, vol_s_monte_carlo,
    vol_s_prime, Branch,
};
