//! The inner angular integral shared by `B_M(ξ)` and `Vol(S_{M,ξ})`:
//!
//! `J_M(c) = ∫₀^{π/2} (1/√Δ − c|sin φ|)₊ / (U + cos φ) dθ`,  `φ = 2θ − θ_M`.
//!
//! With `φ` as variable the two parts integrate in elementary terms:
//! `∫ dφ/(U + cos φ) = √Δ · atan(tan(φ/2)/α)` with `α = (T + √Δ)/2`, and
//! `∫ sin φ/(U + cos φ) dφ = −ln(U + cos φ)`.

use std::f64::consts::{FRAC_PI_2, PI};

use hyperbolic_core::quad::integrate_with_breaks;

use crate::element::SemigroupElement;

/// Maximal `φ`-intervals where the positive part is active, each with the sign of
/// `sin φ` on it.
fn active_intervals(e: &SemigroupElement, c: f64) -> Vec<(f64, f64, f64)> {
    let (lo, hi) = (-e.theta_m, PI - e.theta_m);
    let s = 1.0 / (c * e.sqrt_delta);
    let mut out = Vec::with_capacity(4);
    if !(s < 1.0) {
        out.push((lo, 0.0, -1.0));
        out.push((0.0, hi, 1.0));
        return out;
    }
    let a = s.asin();
    out.push((lo.max(-a), 0.0, -1.0));
    out.push((0.0, hi.min(a), 1.0));
    if lo < -PI + a {
        out.push((lo, -PI + a, -1.0));
    }
    if hi > PI - a {
        out.push((PI - a, hi, 1.0));
    }
    out
}

/// Kinks of the integrand in `θ`.
pub fn kinks(e: &SemigroupElement, c: f64) -> Vec<f64> {
    let mut phis = vec![0.0];
    let s = 1.0 / (c * e.sqrt_delta);
    if s < 1.0 {
        let a = s.asin();
        phis.extend([a, -a, PI - a, a - PI]);
    }
    phis.iter().map(|p| 0.5 * (p + e.theta_m)).filter(|t| *t > 0.0 && *t < FRAC_PI_2).collect()
}

/// `J_M(c)` in closed form.
pub fn theta_integral(e: &SemigroupElement, c: f64) -> f64 {
    if c.is_infinite() {
        return 0.0;
    }
    let alpha = 0.5 * (e.t as f64 + e.sqrt_delta);
    let g1 = |p: f64| ((0.5 * p).tan() / alpha).atan();
    let total: f64 = active_intervals(e, c)
        .iter()
        .filter(|(a, b, _)| b > a)
        .map(|&(a, b, sign)| g1(b) - g1(a) + c * sign * (e.denominator(b) / e.denominator(a)).ln())
        .sum();
    0.5 * total
}

/// The integrand of `J_M(c)` as a function of `θ`.
pub fn theta_integrand(e: &SemigroupElement, c: f64, theta: f64) -> f64 {
    let phi = 2.0 * theta - e.theta_m;
    let top = 1.0 / e.sqrt_delta - c * phi.sin().abs();
    if top <= 0.0 {
        0.0
    } else {
        top / e.denominator(phi)
    }
}

/// `J_M(c)` by adaptive Simpson split at the kinks.
pub fn theta_integral_quad(e: &SemigroupElement, c: f64, tol: f64) -> f64 {
    if c.is_infinite() {
        return 0.0;
    }
    let f = |th: f64| theta_integrand(e, c, th);
    let mut pts = kinks(e, c);
    pts.push(0.0);
    pts.push(FRAC_PI_2);
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts.windows(2)
        .filter(|w| f(0.5 * (w[0] + w[1])) > 0.0 || f(w[0]) > 0.0 || f(w[1]) > 0.0)
        .map(|w| integrate_with_breaks(&f, w[0], w[1], &[], tol))
        .sum()
}
