use std::f64::consts::{FRAC_PI_4, PI};

use hyperbolic_core::quad::integrate_with_breaks;
use hyperbolic_core::xi_shift_f64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::area::{theta_integral, theta_integral_quad};
use crate::element::SemigroupElement;
use crate::error::SeriesError;

const QUAD_TOL: f64 = 1e-13;

fn check_xi(xi: f64) -> Result<(), SeriesError> {
    if xi.is_finite() && xi >= 0.0 {
        Ok(())
    } else {
        Err(SeriesError::BadXi(xi))
    }
}

/// `B_M(ξ) = (π/4) ∫₀^{π/2} (1/√Δ − |sin(2θ−θ_M)|/ξ)₊ / (U + cos(2θ−θ_M)) dθ`, by
/// adaptive quadrature split at the kinks.
pub fn b_m(e: &SemigroupElement, xi: f64) -> Result<f64, SeriesError> {
    check_xi(xi)?;
    if xi == 0.0 {
        return Ok(0.0);
    }
    Ok(FRAC_PI_4 * theta_integral_quad(e, 1.0 / xi, QUAD_TOL))
}

/// `B_M(ξ)` through the closed-form angular integral.
pub fn b_m_exact(e: &SemigroupElement, xi: f64) -> Result<f64, SeriesError> {
    check_xi(xi)?;
    if xi == 0.0 {
        return Ok(0.0);
    }
    Ok(FRAC_PI_4 * theta_integral(e, 1.0 / xi))
}

/// The three ranges of the derivative formula: `ξ ≤ 2Z`, `2Z ≤ ξ ≤ √Δ`, `ξ ≥ √Δ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Inner,
    Middle,
    Outer,
}

pub fn branch_of(e: &SemigroupElement, xi: f64) -> Branch {
    if xi <= 2.0 * e.z as f64 {
        Branch::Inner
    } else if xi < e.sqrt_delta {
        Branch::Middle
    } else {
        Branch::Outer
    }
}

/// Evaluates one branch formula of `B′_M(ξ)` regardless of its range (`√(Δ − ξ²)` is
/// clamped at 0), so both one-sided limits at a branch point can be compared.
pub fn b_m_prime_branch(e: &SemigroupElement, xi: f64, branch: Branch) -> f64 {
    let t = e.t as f64;
    let sd = e.sqrt_delta;
    let z = e.z as f64;
    let xi2 = xi * xi;
    let s = ((t - 2.0) * (t + 2.0) - xi2).max(0.0).sqrt();
    match branch {
        Branch::Inner => {
            // ln((T+√Δ)/(T+√(Δ−ξ²))) = ln(1 + δ), δ = ξ² / ((√Δ + s)(T + s))
            let k = 1.0 / ((sd + s) * (t + s));
            let delta = xi2 * k;
            let ratio = if delta < 1e-8 { 1.0 - 0.5 * delta } else { delta.ln_1p() / delta };
            PI / 4.0 * k * ratio
        }
        Branch::Middle | Branch::Outer => {
            let lead = 2.0 * (t + sd).ln() - (4.0 + 4.0 * z * z).ln();
            let tail = if branch == Branch::Middle { ((t - s) / (t + s)).ln() } else { 0.0 };
            PI / (8.0 * xi2) * (lead + tail)
        }
    }
}

/// `B′_M(ξ)` by the three-branch formula (branches split at `2Z` and `√Δ`).
pub fn b_m_prime(e: &SemigroupElement, xi: f64) -> Result<f64, SeriesError> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(SeriesError::NonPositiveXi(xi));
    }
    Ok(b_m_prime_branch(e, xi, branch_of(e, xi)))
}

/// Area of the polar region bounded by the two curves in `θ`, at height `t`.
pub fn area_s(e: &SemigroupElement, xi: f64, t: f64) -> f64 {
    if xi <= 0.0 {
        return 0.0;
    }
    let c2 = t.cos().powi(2);
    c2 * theta_integral(e, 1.0 / (2.0 * xi * c2))
}

/// `Vol(S_{M,ξ}) = ∫₀^{π/4} area(ξ, t) dt / cos²t`, valid for every `ξ ≥ 0`.
pub fn vol_s(e: &SemigroupElement, xi: f64) -> Result<f64, SeriesError> {
    check_xi(xi)?;
    if xi == 0.0 {
        return Ok(0.0);
    }
    let f = |t: f64| theta_integral(e, 1.0 / (2.0 * xi * t.cos().powi(2)));
    // the active intervals change shape where 2ξcos²t/√Δ crosses sin θ_M or 1
    let breaks: Vec<f64> = [e.z as f64 / xi, e.sqrt_delta / (2.0 * xi)]
        .iter()
        .filter(|&&c2| c2 > 0.5 && c2 < 1.0)
        .map(|c2| c2.sqrt().acos())
        .collect();
    Ok(integrate_with_breaks(&f, 0.0, FRAC_PI_4, &breaks, 1e-14))
}

/// `d/dξ Vol(S_{M,ξ}) = (8/π) ∫₀^{π/4} cos²t · B′_M(2ξcos²t) dt`, from `Vol = (4/π) ∫ B_M(2ξcos²t) dt`.
pub fn vol_s_prime(e: &SemigroupElement, xi: f64) -> Result<f64, SeriesError> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(SeriesError::NonPositiveXi(xi));
    }
    let f = |t: f64| {
        let c2 = t.cos().powi(2);
        c2 * b_m_prime_branch(e, 2.0 * xi * c2, branch_of(e, 2.0 * xi * c2))
    };
    let breaks: Vec<f64> = [e.z as f64 / xi, e.sqrt_delta / (2.0 * xi)]
        .iter()
        .filter(|&&c2| c2 > 0.5 && c2 < 1.0)
        .map(|c2| c2.sqrt().acos())
        .collect();
    Ok(8.0 / PI * integrate_with_breaks(&f, 0.0, FRAC_PI_4, &breaks, 1e-14))
}

/// The single-integral closed form for `Vol(S_{M,ξ})`, valid for `ξ ≤ Z_M`.
pub fn vol_s_closed(e: &SemigroupElement, xi: f64) -> Result<f64, SeriesError> {
    check_xi(xi)?;
    if xi > e.z as f64 {
        return Err(SeriesError::XiAboveZ { xi, z: e.z });
    }
    if xi == 0.0 {
        return Ok(0.0);
    }
    let t_m = e.t as f64;
    let delta = (t_m - 2.0) * (t_m + 2.0);
    let sd = e.sqrt_delta;
    let alpha = 0.5 * (t_m + sd);
    let f = |t: f64| {
        let c2 = t.cos().powi(2);
        let w = 4.0 * xi * xi * c2 * c2;
        // √Δ − √(Δ − w) without cancellation
        let gap = w / (sd + (delta - w).sqrt());
        (gap / (2.0 * alpha * xi * c2)).atan() + (-gap / (2.0 * alpha)).ln_1p() / (2.0 * xi * c2)
    };
    Ok(integrate_with_breaks(&f, 0.0, FRAC_PI_4, &[], 1e-14))
}

/// Monte Carlo estimate of the volume of
/// `{(x, y, z) ∈ [0,1]³ : |Ξ_M(x, y)| ≤ ξ, x²X + y²Y + 2xyZ ≤ 1/(1+z²)}`,
/// returning `(estimate, standard error)`.
///
/// Points are drawn in the box `[0, X^{−1/2}] × [0, Y^{−1/2}] × [0, 1]`, which contains the
/// body. Chunk `k` uses ChaCha stream `k` of `seed`, so results are reproducible.
pub fn vol_s_monte_carlo(e: &SemigroupElement, xi: f64, samples: u64, seed: u64) -> (f64, f64) {
    const CHUNK: u64 = 1 << 16;
    let (mx, my, mz) = (e.x as f64, e.y as f64, e.z as f64);
    let (bx, by) = (1.0 / mx.sqrt(), 1.0 / my.sqrt());
    let chunks = samples.div_ceil(CHUNK);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k);
            let n = CHUNK.min(samples - k * CHUNK);
            let mut h = 0u64;
            for _ in 0..n {
                let x = bx * rng.gen::<f64>();
                let y = by * rng.gen::<f64>();
                let z = rng.gen::<f64>();
                if x * x * mx + y * y * my + 2.0 * x * y * mz <= 1.0 / (1.0 + z * z)
                    && xi_shift_f64(mx, my, mz, x, y).abs() <= xi
                {
                    h += 1;
                }
            }
            h
        })
        .sum();
    let p = hits as f64 / samples as f64;
    let boxv = bx * by;
    (boxv * p, boxv * (p * (1.0 - p) / samples as f64).sqrt())
}
