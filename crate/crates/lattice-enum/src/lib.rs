//! Farey sequences and the quadrant-I lattice sets.
//!
//! A matrix `(p′ p; q′ q)` of `Γ_I` is the same thing as a pair of Farey neighbours
//! `p/q < p′/q′ ≤ 1`, i.e. an arc of the Farey tessellation. Both lattice sets are
//! enumerated by mediant subdivision of the Stern–Brocot interval tree starting from
//! `(0/1, 1/1)`; every arc appears exactly once and children are strictly larger
//! than their parent in every bound used here, so subtrees are pruned wholesale.

pub mod asymptotic;
pub mod ball;
pub mod farey;
pub mod io;

pub use ball::{
    count_ball, count_entry_bounded, enumerate_ball, enumerate_entry_bounded, visit_ball, Arc, LatticePoint,
};
pub use farey::{farey_sequence, FareyFraction};
