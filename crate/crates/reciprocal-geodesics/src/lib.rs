//! Reciprocal geodesics on the modular surface.
//!
//! `M ↦ A = M Mᵗ` maps the semigroup `𝔖` onto symmetric hyperbolic matrices with positive
//! entries; `A` and `Mᵗ M` are the two symmetric representatives of one reciprocal class.
//! The geodesic of `A` has length `2 ln N(A)`, and primitive classes are organized by the
//! discriminant of the fixed-point form, which lies in `𝒟_ℛ`.

pub mod arith;
pub mod error;
pub mod io;
pub mod pell;
pub mod reciprocal;
pub mod series;

pub use error::GeodesicError;
pub use io::{geodesic_table, write_geodesics_csv, GeodesicRow};
pub use pell::pell_fundamental;
pub use reciprocal::{
    discriminant_of, is_primitive, norm_of_trace, primitive_root, symmetrize, DiscriminantData, ReciprocalClass,
};
pub use series::{g2_zero_arithmetic, inner_series, trace_weights};
