//! Limiting pair correlation curves.
//!
//! Both conventions are reported on the empirical axis `x` of `R_Q(x)` (window `x/B_Q`).
//! For angles `x = 3ξ/(4π)`, for `tan(θ/2)` values `x = 3ξ/8`, where `ξ` is the variable of
//! the bodies: the cumulative curve is `(8/(3ζ(2)))` times the semigroup series plus the
//! finitely many exterior volumes, and the density is its `x`-derivative.
//!
//! Angles, `ξ ≤ 4`: the density uses `Σ B′_M + A′_{1,0}` in closed form (no other exterior
//! term is active there). Beyond `ξ = 4`, and for the `tan` convention, exterior terms without
//! a closed derivative are differentiated numerically.

use std::f64::consts::PI;

use empirical_stats::{Convention, Normalization};
use exterior_volumes::{a_k0_prime, a_kl, vol_t_quadrature};
use semigroup_series::{g2_zero, series_b, series_b_prime, series_vol_s, series_vol_s_prime, SeriesResult};

use crate::error::HarnessError;

pub const ZETA2: f64 = PI * PI / 6.0;

/// Largest `x` (in the `B_Q`-normalized variable) evaluated without `--allow-extrapolation`.
/// Every exterior body up to this point is covered by the dual-method checks.
pub const VALIDATED_X_MAX: f64 = 1.2;

/// Step in `ξ` for central differences of exterior volumes.
const FD_STEP: f64 = 1e-4;

/// Where the angle density switches from the closed form to differentiated volumes.
const CLOSED_FORM_XI_MAX: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryPoint {
    pub x: f64,
    pub cumulative: f64,
    pub cumulative_tail: f64,
    pub density: f64,
    pub density_tail: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoryModel {
    pub convention: Convention,
    pub normalization: Normalization,
    /// Semigroup cutoff `‖M‖² ≤ X`.
    pub cutoff_norm_sq: i128,
    pub allow_extrapolation: bool,
}

/// `x` in the `B_Q` variable to the body variable `ξ`, and `dξ/dx`.
fn body_scale(conv: Convention) -> f64 {
    match conv {
        Convention::Angle => 4.0 * PI / 3.0,
        Convention::Tan => 8.0 / 3.0,
    }
}

/// The `(K, ℓ)` bodies that can be nonempty at `ξ`.
pub(crate) fn exterior_range(conv: Convention, xi: f64) -> Vec<(i64, usize)> {
    // the angle kernel lives on [1, ξ/2) × [0, ξ/2), the volume kernel on [1, ξ) × [0, ξ)
    let top = match conv {
        Convention::Angle => xi / 2.0,
        Convention::Tan => xi,
    };
    let mut out = Vec::new();
    let mut k = 1i64;
    while (k as f64) < top {
        let mut ell = 0usize;
        while (ell as f64) < top {
            out.push((k, ell));
            ell += 1;
        }
        k += 1;
    }
    out
}

fn exterior_volume(conv: Convention, k: i64, ell: usize, xi: f64) -> Result<f64, HarnessError> {
    Ok(match conv {
        Convention::Angle => a_kl(k, ell, xi)?,
        Convention::Tan => vol_t_quadrature(k, ell, xi)?,
    })
}

fn scaled(r: SeriesResult, c: f64) -> (f64, f64) {
    (c * r.value, c * r.tail_bound)
}

impl TheoryModel {
    /// The body variable `ξ` at display coordinate `s`.
    pub fn xi_of(&self, s: f64) -> f64 {
        body_scale(self.convention) * self.bq_x(s)
    }

    /// Inverse of [`TheoryModel::xi_of`].
    pub fn s_of_xi(&self, xi: f64) -> f64 {
        xi / body_scale(self.convention) / self.density_factor()
    }

    /// Display coordinate to the `B_Q` variable: under `Q²` windows the curve at `s` is the
    /// `B_Q` curve at `3s/8` (since `B_Q ∼ 3Q²/8`).
    fn bq_x(&self, s: f64) -> f64 {
        match self.normalization {
            Normalization::SampleCount => s,
            Normalization::OrderSquared(_) => 3.0 * s / 8.0,
        }
    }

    fn density_factor(&self) -> f64 {
        match self.normalization {
            Normalization::SampleCount => 1.0,
            Normalization::OrderSquared(_) => 3.0 / 8.0,
        }
    }

    /// Errors on negative `s`, and past the validated range unless extrapolation is allowed.
    pub fn check_range(&self, s: f64) -> Result<(), HarnessError> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(HarnessError::Usage(format!("x = {s} must be finite and non-negative")));
        }
        let limit = VALIDATED_X_MAX / self.density_factor();
        if !self.allow_extrapolation && s > limit * (1.0 + 1e-12) {
            return Err(HarnessError::Extrapolation { x: s, limit });
        }
        Ok(())
    }

    /// `R₂(s)` with its tail bound.
    pub fn cumulative(&self, s: f64) -> Result<(f64, f64), HarnessError> {
        self.check_range(s)?;
        let xi = self.xi_of(s);
        let pre = 8.0 / (3.0 * ZETA2);
        let series = match self.convention {
            Convention::Angle => series_b(xi, self.cutoff_norm_sq)?,
            Convention::Tan => series_vol_s(xi, self.cutoff_norm_sq)?,
        };
        let mut exterior = 0.0;
        for (k, ell) in exterior_range(self.convention, xi) {
            exterior += exterior_volume(self.convention, k, ell, xi)?;
        }
        Ok((pre * (series.value + exterior), pre * series.tail_bound))
    }

    /// `g₂(s) = dR₂/ds` with its tail bound.
    pub fn density(&self, s: f64) -> Result<(f64, f64), HarnessError> {
        self.check_range(s)?;
        let xi = self.xi_of(s);
        let pre = 8.0 / (3.0 * ZETA2) * body_scale(self.convention) * self.density_factor();
        let x_cut = self.cutoff_norm_sq;
        let (series, tail) = match self.convention {
            // the ξ → 0 limit of Σ B′_M is the g₂(0) series
            Convention::Angle if xi == 0.0 => scaled(g2_zero(x_cut)?, self.density_factor()),
            Convention::Angle => scaled(series_b_prime(xi, x_cut)?, pre),
            // Σ d/dξ Vol(S) is continuous at 0; the first-order error at ξ = 1e-9 is O(ξ²)
            Convention::Tan => scaled(series_vol_s_prime(xi.max(1e-9), x_cut)?, pre),
        };
        if xi == 0.0 {
            return Ok((series, tail));
        }
        let mut exterior = 0.0;
        for (k, ell) in exterior_range(self.convention, xi + FD_STEP) {
            exterior += match (self.convention, ell) {
                (Convention::Angle, 0) => a_k0_prime(k, xi)?,
                (Convention::Angle, _) if xi <= CLOSED_FORM_XI_MAX => 0.0,
                _ => {
                    let lo = exterior_volume(self.convention, k, ell, (xi - FD_STEP).max(0.0))?;
                    let hi = exterior_volume(self.convention, k, ell, xi + FD_STEP)?;
                    (hi - lo) / (2.0 * FD_STEP)
                }
            };
        }
        Ok((series + pre * exterior, tail))
    }

    pub fn point(&self, s: f64) -> Result<TheoryPoint, HarnessError> {
        let (cumulative, cumulative_tail) = self.cumulative(s)?;
        let (density, density_tail) = self.density(s)?;
        Ok(TheoryPoint { x: s, cumulative, cumulative_tail, density, density_tail })
    }

    pub fn curve(&self, grid: &[f64]) -> Result<Vec<TheoryPoint>, HarnessError> {
        grid.iter().map(|&s| self.point(s)).collect()
    }

    /// Average density over `[a, b]`, i.e. `(R₂(b) − R₂(a))/(b − a)`, with its tail bound.
    pub fn bin_average(&self, a: f64, b: f64) -> Result<(f64, f64), HarnessError> {
        let (ra, ta) = self.cumulative(a)?;
        let (rb, tb) = self.cumulative(b)?;
        // both partial sums undershoot by at most their tails, so the difference errs by less than the larger
        Ok(((rb - ra) / (b - a), ta.max(tb) / (b - a)))
    }
}

impl TheoryModel {
    /// The cusp where `ξ` crosses `√(T² − 4) = √5` for `M = L, R`: `x = 3√5/(4π)` for angles.
    pub fn spike_location(&self) -> f64 {
        self.s_of_xi(5f64.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(conv: Convention, norm: Normalization) -> TheoryModel {
        TheoryModel { convention: conv, normalization: norm, cutoff_norm_sq: 2000, allow_extrapolation: false }
    }

    #[test]
    fn summation_ranges() {
        assert!(exterior_range(Convention::Angle, 2.0).is_empty());
        assert_eq!(exterior_range(Convention::Angle, 3.0), vec![(1, 0), (1, 1)]);
        assert_eq!(exterior_range(Convention::Angle, 4.5).len(), 6);
        assert!(exterior_range(Convention::Tan, 1.0).is_empty());
        assert_eq!(exterior_range(Convention::Tan, 1.5), vec![(1, 0), (1, 1)]);
    }

    #[test]
    fn axis_maps() {
        let a = model(Convention::Angle, Normalization::SampleCount);
        assert!((a.xi_of(0.3) - 0.4 * PI).abs() < 1e-15);
        assert!((a.spike_location() - 0.533822).abs() < 1e-6);
        assert!((a.s_of_xi(a.xi_of(0.77)) - 0.77).abs() < 1e-15);
        let t = model(Convention::Tan, Normalization::OrderSquared(100));
        assert!((t.xi_of(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn q2_curves_are_rescaled_bq_curves() {
        for conv in [Convention::Angle, Convention::Tan] {
            let bq = model(conv, Normalization::SampleCount);
            let q2 = model(conv, Normalization::OrderSquared(10));
            for s in [0.4, 1.0, 2.5] {
                assert_eq!(q2.cumulative(s).unwrap(), bq.cumulative(3.0 * s / 8.0).unwrap());
                let (d2, _) = q2.density(s).unwrap();
                let (d1, _) = bq.density(3.0 * s / 8.0).unwrap();
                assert!((d2 - 3.0 / 8.0 * d1).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn extrapolation_guard() {
        let m = model(Convention::Angle, Normalization::SampleCount);
        assert!(m.density(VALIDATED_X_MAX).is_ok());
        assert!(matches!(m.density(1.3), Err(HarnessError::Extrapolation { .. })));
        assert!(matches!(m.cumulative(-0.1), Err(HarnessError::Usage(_))));
        let q2 = model(Convention::Angle, Normalization::OrderSquared(10));
        assert!(q2.cumulative(3.2).is_ok());
        assert!(q2.cumulative(3.3).is_err());
        let free = TheoryModel { allow_extrapolation: true, ..m };
        assert!(free.density(1.3).unwrap().0 > 0.0);
    }

    #[test]
    fn zero_is_the_start_of_both_curves() {
        for conv in [Convention::Angle, Convention::Tan] {
            let m = model(conv, Normalization::SampleCount);
            assert_eq!(m.cumulative(0.0).unwrap().0, 0.0);
            let (d0, _) = m.density(0.0).unwrap();
            let (d1, _) = m.density(1e-4).unwrap();
            assert!((d0 - d1).abs() < 1e-6, "{conv:?}: {d0} {d1}");
        }
    }
}
