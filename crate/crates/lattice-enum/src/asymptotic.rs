//! Leading-order constant of the ball count, `B_Q ~ Vol(S) Q² / ζ(2)` with
//! `S = {(x, y, z) ∈ [0,1]³ : (1 + y²)(x² + z²) ≤ 1}`.

use hyperbolic_core::quad::integrate;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

pub const ZETA_2: f64 = PI * PI / 6.0;

/// Area of `{(x, z) ∈ [0,1]² : x² + z² ≤ ρ²}` in polar coordinates, clipped to the square.
fn quarter_disc_area(rho: f64) -> f64 {
    let f = |phi: f64| {
        let edge = 1.0 / phi.cos().max(phi.sin());
        0.5 * rho.min(edge).powi(2)
    };
    integrate(&f, 0.0, FRAC_PI_2, 1e-15)
}

/// `Vol(S)` through the substitution `y = tan t`; equals `π²/16`.
pub fn ball_body_volume() -> f64 {
    integrate(&|t: f64| quarter_disc_area(t.cos()) / t.cos().powi(2), 0.0, FRAC_PI_4, 1e-14)
}

/// `lim B_Q / Q² = Vol(S) / ζ(2)`.
pub fn ball_density_constant() -> f64 {
    ball_body_volume() / ZETA_2
}
