//! Primitives for matrices in the modular group acting on the upper half-plane.
//!
//! Everything here is a pure function of its inputs. Exact quantities are kept in
//! integers (`i64` entries, `i128` quadratic invariants, big rationals for the shift
//! function); angles and distances are `f64`.

pub mod error;
pub mod invariants;
pub mod matrix;
pub mod quad;
pub mod quadrant;
pub mod xi;

pub use error::CoreError;
pub use invariants::{hyperbolic_distance_from_i, invariants, GammaInvariants};
pub use matrix::UnimodularMatrix;
pub use quadrant::{canonicalize, is_gamma_one, mirror, Quadrant, QuadrantTag, Symmetry};
pub use xi::{phi_exact, xi_shift, xi_shift_f64};
