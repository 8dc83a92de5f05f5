//! Truncated sums over `𝔖` with explicit tail bounds.
//!
//! Every series here has terms bounded by `c/(T² − κ)` once `T` exceeds the cutoff `X`.
//! The number of `M ∈ 𝔖` with `‖M‖² ≤ t` is measured during enumeration; writing
//! `ĉ = max N(t)/t` over `t ∈ [X/2, X]` and assuming `N(t) ≤ ĉ t` beyond the cutoff, Abel
//! summation gives `Σ_{T > X} c/(T² − κ) ≤ 2cĉ/X · (X²/(X² − κ))²`. The reported bound
//! doubles this as a safety factor; the growth assumption is empirical, not proved.

use std::f64::consts::PI;

use crate::element::{fold_semigroup, SemigroupElement};
use crate::error::SeriesError;
use crate::volumes::{b_m, b_m_prime, vol_s, vol_s_prime};

const SAFETY: f64 = 2.0;

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    /// Partial sum over `T ≤ truncation_norm_sq`.
    pub value: f64,
    pub truncation_norm_sq: i128,
    /// `value ± tail_bound` brackets the full series.
    pub tail_bound: f64,
    pub terms_used: u64,
    /// `S(X) − S(X/2)`: the tail if it decays like `1/X`. Informational only.
    pub extrapolated_tail: f64,
    /// The measured `ĉ`.
    pub count_slope: f64,
}

#[derive(Clone)]
struct Acc {
    sum: f64,
    sum_half: f64,
    terms: u64,
    n_half: u64,
    upper_traces: Vec<u64>,
}

fn merge(mut a: Acc, b: Acc) -> Acc {
    a.sum += b.sum;
    a.sum_half += b.sum_half;
    a.terms += b.terms;
    a.n_half += b.n_half;
    a.upper_traces.extend(b.upper_traces);
    a
}

/// `max N(t)/t` over `t ∈ [X/2, X]`; the maximum of the step function is at a jump.
fn count_slope(half: i128, n_half: u64, mut traces: Vec<u64>) -> f64 {
    traces.sort_unstable();
    let mut best = n_half as f64 / half.max(1) as f64;
    let mut n = n_half;
    for (i, &t) in traces.iter().enumerate() {
        n += 1;
        if traces.get(i + 1) != Some(&t) {
            best = best.max(n as f64 / t as f64);
        }
    }
    best
}

/// Sums `term` over `T ≤ norm_sq_max`; `c`, `kappa` give the tail majorant `c/(T² − κ)`.
fn run<F>(norm_sq_max: i128, term: F, c: f64, kappa: f64) -> Result<SeriesResult, SeriesError>
where
    F: Fn(&SemigroupElement) -> f64 + Sync,
{
    if norm_sq_max < 3 {
        return Err(SeriesError::BadCutoff(norm_sq_max));
    }
    let half = norm_sq_max / 2;
    let empty = Acc { sum: 0.0, sum_half: 0.0, terms: 0, n_half: 0, upper_traces: Vec::new() };
    let acc = fold_semigroup(
        norm_sq_max,
        empty,
        |a: &mut Acc, e| {
            let v = term(e);
            a.sum += v;
            a.terms += 1;
            if e.t <= half {
                a.sum_half += v;
                a.n_half += 1;
            } else {
                a.upper_traces.push(e.t as u64);
            }
        },
        merge,
    );
    let slope = count_slope(half, acc.n_half, acc.upper_traces);
    let x = norm_sq_max as f64;
    let tail_bound = if c == 0.0 {
        0.0
    } else if x * x > 2.0 * kappa {
        let inflate = (x * x / (x * x - kappa)).powi(2);
        SAFETY * 2.0 * c * slope / x * inflate
    } else {
        f64::INFINITY
    };
    Ok(SeriesResult {
        value: acc.sum,
        truncation_norm_sq: norm_sq_max,
        tail_bound,
        terms_used: acc.terms,
        extrapolated_tail: acc.sum - acc.sum_half,
        count_slope: slope,
    })
}

/// The derivative bound `B′_M(s) ≤ π/(16(T² − 4 − s²))` holds on the first branch,
/// `s ≤ 2Z`. Since `Z² = XY − 1 ≥ T/2 − 1`, every `M` beyond the cutoff is on it when
/// `ξ² ≤ 4(X/2 − 1)`.
fn first_branch_beyond(norm_sq_max: i128, xi: f64) -> bool {
    xi * xi <= 4.0 * (norm_sq_max as f64 / 2.0 - 1.0)
}

/// `Σ_{M ∈ 𝔖} B_M(ξ)`; tail from `B_M(ξ) = ∫₀^ξ B′_M ≤ πξ/(16(T² − 4 − ξ²))`.
pub fn series_b(xi: f64, norm_sq_max: i128) -> Result<SeriesResult, SeriesError> {
    if !(xi >= 0.0) || !xi.is_finite() {
        return Err(SeriesError::BadXi(xi));
    }
    let c = if first_branch_beyond(norm_sq_max, xi) { PI * xi / 16.0 } else { f64::INFINITY };
    let mut r = run(norm_sq_max, |e| b_m(e, xi).unwrap(), c, 4.0 + xi * xi)?;
    if c.is_infinite() {
        r.tail_bound = f64::INFINITY;
    }
    Ok(r)
}

/// `Σ_{M ∈ 𝔖} B′_M(ξ)`; tail from `B′_M(ξ) ≤ π/(16(T² − 4 − ξ²))`.
pub fn series_b_prime(xi: f64, norm_sq_max: i128) -> Result<SeriesResult, SeriesError> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(SeriesError::NonPositiveXi(xi));
    }
    let mut r = run(norm_sq_max, |e| b_m_prime(e, xi).unwrap(), PI / 16.0, 4.0 + xi * xi)?;
    if !first_branch_beyond(norm_sq_max, xi) {
        r.tail_bound = f64::INFINITY;
    }
    Ok(r)
}

/// `Σ_{M ∈ 𝔖} Vol(S_{M,ξ})`. On the first branch the angular integral is at most
/// `(4/π)·ξ′·π/(16(T² − 4 − ξ′²))` with `ξ′ = 2ξcos²t ≤ 2ξ`, which integrates to
/// `Vol ≤ (π + 2)ξ/(16(T² − 4 − 4ξ²))`.
pub fn series_vol_s(xi: f64, norm_sq_max: i128) -> Result<SeriesResult, SeriesError> {
    if !(xi >= 0.0) || !xi.is_finite() {
        return Err(SeriesError::BadXi(xi));
    }
    let mut r = run(norm_sq_max, |e| vol_s(e, xi).unwrap(), (PI + 2.0) * xi / 16.0, 4.0 + 4.0 * xi * xi)?;
    if !first_branch_beyond(norm_sq_max, 2.0 * xi) {
        r.tail_bound = f64::INFINITY;
    }
    Ok(r)
}

/// `Σ_{M ∈ 𝔖} d/dξ Vol(S_{M,ξ})`; the same first-branch bound gives `(π + 2)/(16(T² − 4 − 4ξ²))`.
pub fn series_vol_s_prime(xi: f64, norm_sq_max: i128) -> Result<SeriesResult, SeriesError> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(SeriesError::NonPositiveXi(xi));
    }
    let mut r = run(norm_sq_max, |e| vol_s_prime(e, xi).unwrap(), (PI + 2.0) / 16.0, 4.0 + 4.0 * xi * xi)?;
    if !first_branch_beyond(norm_sq_max, 2.0 * xi) {
        r.tail_bound = f64::INFINITY;
    }
    Ok(r)
}

/// `g₂(0) = (2/3) Σ_{M ∈ 𝔖} (T/√(T² − 4) − 1)`; each term is `(8/3)/(√Δ(T + √Δ)) ≤ (4/3)/(T² − 4)`.
pub fn g2_zero(norm_sq_max: i128) -> Result<SeriesResult, SeriesError> {
    run(norm_sq_max, |e| 8.0 / 3.0 / (e.sqrt_delta * (e.t as f64 + e.sqrt_delta)), 4.0 / 3.0, 4.0)
}

/// `(16/(3ξ²)) Σ ln((T + √(T²−4)) / (T + √(T²−4−ξ²)))`, the closed density for `0 < ξ ≤ 2`,
/// evaluated directly from the logarithms.
pub fn g2_log_form(xi: f64, norm_sq_max: i128) -> Result<SeriesResult, SeriesError> {
    if !(xi > 0.0) || !xi.is_finite() {
        return Err(SeriesError::NonPositiveXi(xi));
    }
    let k = 16.0 / (3.0 * xi * xi);
    // the log is at most ξ²/(4(T² − 4 − ξ²))·2, see series_b_prime
    run(
        norm_sq_max,
        |e| {
            let t = e.t as f64;
            k * ((t + e.sqrt_delta) / (t + ((t - 2.0) * (t + 2.0) - xi * xi).sqrt())).ln()
        },
        4.0 / 3.0,
        4.0 + xi * xi,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g2_zero_small_cutoffs() {
        let r = g2_zero(3).unwrap();
        assert_eq!(r.terms_used, 2);
        let expect = 2.0 / 3.0 * 2.0 * (3.0 / 5f64.sqrt() - 1.0);
        assert!((r.value - expect).abs() < 1e-15);
        assert!((r.value - 0.455522).abs() < 1e-6);
        let r = g2_zero(7).unwrap();
        assert_eq!(r.terms_used, 6);
        // six terms, T = 3, 3, 6, 6, 7, 7
        let f = |t: f64| t / (t * t - 4.0).sqrt() - 1.0;
        let expect = 2.0 / 3.0 * 2.0 * (f(3.0) + f(6.0) + f(7.0));
        assert!((r.value - expect).abs() < 1e-15);
        assert!((r.value - 0.594399).abs() < 1e-6);
        assert!(g2_zero(2).is_err());
    }

    #[test]
    fn zero_xi_series() {
        let r = series_b(0.0, 100).unwrap();
        assert_eq!((r.value, r.tail_bound), (0.0, 0.0));
    }

    #[test]
    fn slope_scan() {
        // N(5) = 2, then traces 6, 6, 7, 7
        assert_eq!(count_slope(5, 2, vec![7, 6, 7, 6]), (6.0f64 / 7.0).max(4.0 / 6.0).max(2.0 / 5.0));
    }
}
