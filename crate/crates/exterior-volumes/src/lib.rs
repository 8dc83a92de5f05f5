//! Exterior pairs of Farey arcs.
//!
//! Consecutive denominators of `F_Q` are generated by the triangle map
//! `T(x, y) = (y, ⌊(1+x)/y⌋ y − x)` on `𝒯 = {x + y > 1} ⊂ (0,1]²`. Iterating it gives the
//! chain of forms `L_i`, the gap function `Υ_{ℓ,K}`, and the bodies `T_{K,ℓ,ξ}` whose
//! volumes make up the exterior part of the pair correlation.

pub mod body;
pub mod chain;
pub mod error;
pub mod io;
pub mod triangle;

pub use body::{
    a_k0_prime, a_kl, a_kl_cylinders, a_kl_monte_carlo, in_body, vol_t, vol_t_monte_carlo, vol_t_quadrature,
    MonteCarloVolume, VolumeEstimate,
};
pub use chain::{linear_chain, upsilon, upsilon_in_cylinder, Cylinder, LinearChain, LinearForm};
pub use error::ExteriorError;
pub use io::{write_volumes_csv, VolumeRow};
pub use triangle::{triangle_map, triangle_map_inverse, TrianglePoint};
