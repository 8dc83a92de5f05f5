//! The bodies `T_{K,ℓ,ξ} ⊂ [0,1]³` and their volumes.
//!
//! Membership is tested pointwise for Monte Carlo. The deterministic path splits the
//! projection to the `(x, y)` plane into digit cylinders, on which every `L_i` is linear.
//! In polar coordinates `(x, y) = r e^{iθ}` each constraint is then a bound on `r`, and
//! with `c = cos²t = 1/(1+z²)` the admissible `r²`-range is piecewise linear in `c`, so
//! the `z`-integral is done exactly and only `θ` is integrated numerically.

use hyperbolic_core::quad::{integrate_with_breaks, sign_change_roots};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chain::{chain_tail, Cylinder};
use crate::error::ExteriorError;

const STRATA_PER_AXIS: u64 = 8;
const QUAD_TOL: f64 = 1e-11;

/// Exact membership test for `T_{K,ℓ,ξ}`: full chain validity, `0 < L_{ℓ+1} ≤ 1`,
/// `Υ_{ℓ,K} ≤ ξ` and `max{x²+y², L_ℓ²+L_{ℓ+1}²} ≤ 1/(1+z²)`.
pub fn in_body(k: i64, ell: usize, xi: f64, x: f64, y: f64, z: f64) -> bool {
    if !(x > 0.0 && x <= 1.0 && y > 0.0 && y <= 1.0 && (0.0..=1.0).contains(&z)) {
        return false;
    }
    let Some((ups, a, b)) = chain_tail(x, y, ell, k) else {
        return false;
    };
    let bound = 1.0 / (1.0 + z * z);
    b <= 1.0 && ups <= xi && x * x + y * y <= bound && a * a + b * b <= bound
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloVolume {
    pub volume: f64,
    pub stderr: f64,
    pub hits: u64,
    pub samples: u64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VolumeEstimate {
    pub monte_carlo: MonteCarloVolume,
    pub quadrature: f64,
}

impl VolumeEstimate {
    /// `|MC − quadrature|` in units of the Monte Carlo standard error. The error is floored
    /// at one hit's worth of volume, so a body thinner than the sampling resolution does not
    /// read as an infinite discrepancy.
    pub fn discrepancy_sigmas(&self) -> f64 {
        let d = (self.monte_carlo.volume - self.quadrature).abs();
        let se = self.monte_carlo.stderr.max(1.0 / self.monte_carlo.samples.max(1) as f64);
        d / se
    }
}

fn stream_seed(k: i64, ell: usize, xi: f64, seed: u64) -> [u8; 32] {
    let mut s = [0u8; 32];
    s[..8].copy_from_slice(&k.to_le_bytes());
    s[8..16].copy_from_slice(&(ell as u64).to_le_bytes());
    s[16..24].copy_from_slice(&xi.to_bits().to_le_bytes());
    s[24..].copy_from_slice(&seed.to_le_bytes());
    s
}

/// Stratified Monte Carlo over an `8×8×8` grid of `[0,1]³`, one ChaCha stream per stratum,
/// keyed by `(K, ℓ, ξ, seed)`. Bit-reproducible for any thread count.
pub fn vol_t_monte_carlo(k: i64, ell: usize, xi: f64, samples: u64, seed: u64) -> MonteCarloVolume {
    stratified(k, ell, xi, samples, seed, Kernel::Volume)
}

/// Monte Carlo for the angle kernel: `A_{K,ℓ}(ξ)` is the volume of the points `(x, y, z)`
/// lying in `T_{K,ℓ,ξ(1+z²)/2}`, since its `z = tan t` section is `A_{K,ℓ}(ξ/(2cos²t), t)`.
pub fn a_kl_monte_carlo(k: i64, ell: usize, xi: f64, samples: u64, seed: u64) -> MonteCarloVolume {
    stratified(k, ell, xi, samples, seed, Kernel::Angle)
}

fn stratified(k: i64, ell: usize, xi: f64, samples: u64, seed: u64, kernel: Kernel) -> MonteCarloVolume {
    let strata = STRATA_PER_AXIS.pow(3);
    let per = samples.div_ceil(strata).max(1);
    let key = stream_seed(k, ell, xi, seed);
    let side = 1.0 / STRATA_PER_AXIS as f64;
    let counts: Vec<u64> = (0..strata)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::from_seed(key);
            rng.set_stream(s + ((kernel == Kernel::Angle) as u64) * strata);
            let (i, j, l) = (s % STRATA_PER_AXIS, (s / STRATA_PER_AXIS) % STRATA_PER_AXIS, s / STRATA_PER_AXIS.pow(2));
            let mut h = 0u64;
            for _ in 0..per {
                // (0, 1] offsets inside the cell
                let x = (i as f64 + 1.0 - rng.gen::<f64>()) * side;
                let y = (j as f64 + 1.0 - rng.gen::<f64>()) * side;
                let z = (l as f64 + 1.0 - rng.gen::<f64>()) * side;
                let xi_z = match kernel {
                    Kernel::Volume => xi,
                    Kernel::Angle => 0.5 * xi * (1.0 + z * z),
                };
                if in_body(k, ell, xi_z, x, y, z) {
                    h += 1;
                }
            }
            h
        })
        .collect();
    let w = 1.0 / strata as f64;
    let mut volume = 0.0;
    let mut var = 0.0;
    for &h in &counts {
        let p = h as f64 / per as f64;
        volume += w * p;
        var += w * w * p * (1.0 - p) / per as f64;
    }
    MonteCarloVolume { volume, stderr: var.sqrt(), hits: counts.iter().sum(), samples: per * strata }
}

/// `∫₀¹ ½ (min(h, c/m) − max(g, p + q c))₊ dz` with `c = 1/(1+z²)`, exactly.
fn z_integral(h: f64, g: f64, m: f64, p: f64, q: f64) -> f64 {
    let mut cs = vec![h * m, g * m];
    if q > 0.0 {
        cs.push((g - p) / q);
        cs.push((h - p) / q);
    }
    let slope = 1.0 / m - q;
    if slope != 0.0 {
        cs.push(p / slope);
    }
    let mut zs: Vec<f64> =
        cs.into_iter().filter(|c| c.is_finite() && *c > 0.5 && *c < 1.0).map(|c| (1.0 / c - 1.0).sqrt()).collect();
    zs.push(0.0);
    zs.push(1.0);
    zs.sort_by(f64::total_cmp);
    let mut total = 0.0;
    for w in zs.windows(2) {
        let (z0, z1) = (w[0], w[1]);
        if z1 <= z0 {
            continue;
        }
        let zm = 0.5 * (z0 + z1);
        let cm = 1.0 / (1.0 + zm * zm);
        let (ua, ub) = if h <= cm / m { (h, 0.0) } else { (0.0, 1.0 / m) };
        let (la, lb) = if g >= p + q * cm { (g, 0.0) } else { (p, q) };
        let (alpha, beta) = (ua - la, ub - lb);
        if alpha + beta * cm > 0.0 {
            total += alpha * (z1 - z0) + beta * (z1.atan() - z0.atan());
        }
    }
    0.5 * total
}

/// Which kernel: the plain volume (`Υ ≤ ξ`) or the angle kernel (`Υ ≤ ξ/(2cos²t)`).
#[derive(Debug, Clone, Copy, PartialEq)]
enum Kernel {
    Volume,
    Angle,
}

/// Angular range of the cylinder, from `L_i(e^{iθ}) > 0` for `0 ≤ i ≤ ℓ+1`.
fn theta_range(cyl: &Cylinder) -> Option<(f64, f64)> {
    // a + b tanθ > 0 for tanθ in (lo, hi)
    let (mut lo, mut hi) = (0.0f64, f64::INFINITY);
    for f in &cyl.forms[1..] {
        let (a, b) = (f.a as f64, f.b as f64);
        if b > 0.0 {
            lo = lo.max(-a / b);
        } else if b < 0.0 {
            hi = hi.min(-a / b);
        } else if a <= 0.0 {
            return None;
        }
    }
    (lo < hi).then(|| (lo.atan(), hi.atan()))
}

fn cylinder_integral(cyl: &Cylinder, xi: f64, kernel: Kernel) -> f64 {
    let Some((t0, t1)) = theta_range(cyl) else {
        return 0.0;
    };
    let ell = cyl.ell();
    let f = |th: f64| {
        let v = cyl.values(th.cos(), th.sin());
        // v[i + 1] = L_i
        let mut h = f64::INFINITY;
        for &li in &v {
            if li > 0.0 {
                h = h.min(1.0 / (li * li));
            }
        }
        let mut g = 0.0f64;
        for i in 1..=ell {
            let s = v[i] + v[i + 1];
            g = g.max(1.0 / (s * s));
        }
        let (a, b) = (v[ell + 1], v[ell + 2]);
        if a <= 0.0 || b <= 0.0 {
            return 0.0;
        }
        let m = (a * a + b * b).max(1.0);
        let ups = crate::chain::Cylinder::upsilon_at(cyl, th.cos(), th.sin());
        let (p, q) = match kernel {
            Kernel::Volume => (ups / xi, 0.0),
            Kernel::Angle => (0.0, 2.0 * ups / xi),
        };
        z_integral(h, g, m, p, q)
    };
    integrate_with_breaks(&f, t0, t1, &support_edges(&f, t0, t1), QUAD_TOL)
}

/// Edges of `{f > 0}` for a nonnegative `f`, located on a fine scan and refined by
/// bisection, so that narrow supports are not skipped by the adaptive rule.
fn support_edges<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Vec<f64> {
    const SCAN: usize = 2048;
    let ind = |t: f64| if f(t) > 0.0 { 1.0 } else { -1.0 };
    sign_change_roots(&ind, a, b, SCAN)
}

/// All digit strings in `[1, kmax]^ℓ` whose cylinder meets the open quarter plane.
fn cylinders(k: i64, ell: usize, kmax: i64) -> Vec<Cylinder> {
    let mut out = Vec::new();
    let mut digits = vec![1i64; ell];
    loop {
        let cyl = Cylinder::new(&digits, k);
        if theta_range(&cyl).is_some() {
            out.push(cyl);
        }
        let mut i = 0;
        loop {
            if i == ell {
                return out;
            }
            digits[i] += 1;
            if digits[i] <= kmax {
                break;
            }
            digits[i] = 1;
            i += 1;
        }
    }
}

fn check(k: i64, xi: f64) -> Result<(), ExteriorError> {
    if k < 1 {
        return Err(ExteriorError::BadArgument(format!("K = {k} must be at least 1")));
    }
    if !(xi >= 0.0 && xi.is_finite()) {
        return Err(ExteriorError::BadArgument(format!("xi = {xi} must be finite and nonnegative")));
    }
    Ok(())
}

/// Every digit satisfies `K_i < Υ ≤ ξ` on these bodies, so cylinders with a digit above
/// `⌈ξ⌉` are empty.
fn summed(k: i64, ell: usize, xi: f64, kernel: Kernel) -> f64 {
    let kmax = (xi.ceil() as i64).max(1);
    let parts: Vec<f64> = cylinders(k, ell, kmax).par_iter().map(|c| cylinder_integral(c, xi, kernel)).collect();
    parts.iter().sum()
}

/// `Vol(T_{K,ℓ,ξ})` by per-cylinder polar quadrature.
pub fn vol_t_quadrature(k: i64, ell: usize, xi: f64) -> Result<f64, ExteriorError> {
    check(k, xi)?;
    if xi == 0.0 {
        return Ok(0.0);
    }
    Ok(summed(k, ell, xi, Kernel::Volume))
}

/// Both estimates of `Vol(T_{K,ℓ,ξ})`.
pub fn vol_t(k: i64, ell: usize, xi: f64, samples: u64, seed: u64) -> Result<VolumeEstimate, ExteriorError> {
    let quadrature = vol_t_quadrature(k, ell, xi)?;
    Ok(VolumeEstimate { monte_carlo: vol_t_monte_carlo(k, ell, xi, samples, seed), quadrature })
}

/// `F_{K,0}(θ) = Υ_{0,K}(e^{iθ})` and `m(θ) = max{1, L_0² + L_1²}` on the unit circle.
fn polar_k0(k: i64, th: f64) -> (f64, f64) {
    let (c, s) = (th.cos(), th.sin());
    let l1 = k as f64 * s - c;
    let n = s * s + l1 * l1;
    (c / s + l1 / (s * n), n.max(1.0))
}

/// `A_{K,0}(ξ) = (π/8) ∫ (1/m(θ) − 2F_{K,0}(θ)/ξ)₊ dθ` over `tanθ > 1/K`.
fn a_k0(k: i64, xi: f64) -> f64 {
    let lo = (1.0 / k as f64).atan();
    let hi = std::f64::consts::FRAC_PI_2;
    let g = |th: f64| {
        let (f, m) = polar_k0(k, th);
        1.0 / m - 2.0 * f / xi
    };
    let mut breaks = sign_change_roots(&g, lo, hi, 4096);
    // where L_0² + L_1² crosses 1
    breaks.push((2.0 / k as f64).atan());
    let integrand = |th: f64| g(th).max(0.0);
    std::f64::consts::FRAC_PI_8 * integrate_with_breaks(&integrand, lo, hi, &breaks, 1e-13)
}

/// The angle-kernel volume `A_{K,ℓ}(ξ) = ∫₀^{π/4} A_{K,ℓ}(ξ/(2cos²t), t) dt/cos²t`.
///
/// `ℓ = 0` uses the homogeneous form `(π/4) A_{K,0}(ξ/2, 0)`; `ℓ ≥ 1` integrates cylinder
/// by cylinder. No range is short-circuited: zeros are computed, not assumed.
pub fn a_kl(k: i64, ell: usize, xi: f64) -> Result<f64, ExteriorError> {
    check(k, xi)?;
    if xi == 0.0 {
        return Ok(0.0);
    }
    if ell == 0 {
        return Ok(a_k0(k, xi));
    }
    Ok(summed(k, ell, xi, Kernel::Angle))
}

/// The general cylinder path for `ℓ = 0` too; used to cross-check the polar form.
pub fn a_kl_cylinders(k: i64, ell: usize, xi: f64) -> Result<f64, ExteriorError> {
    check(k, xi)?;
    if xi == 0.0 {
        return Ok(0.0);
    }
    Ok(summed(k, ell, xi, Kernel::Angle))
}

/// Closed form of `A′_{K,0}(ξ)`: zero up to `2K`, a logarithm of the two roots of
/// `x²(ξ+2K) − 2xK(ξ+K) + ξ(K²+1) − 2K` up to `K√(K²+4)`, then `ln(1+K²)`,
/// all times `π/(4ξ²)`.
pub fn a_k0_prime(k: i64, xi: f64) -> Result<f64, ExteriorError> {
    if k < 1 {
        return Err(ExteriorError::BadArgument(format!("K = {k} must be at least 1")));
    }
    if !(xi > 0.0 && xi.is_finite()) {
        return Err(ExteriorError::BadArgument(format!("xi = {xi} must be positive")));
    }
    let kf = k as f64;
    let pre = std::f64::consts::FRAC_PI_4 / (xi * xi);
    let base = (1.0 + kf * kf).ln();
    if xi <= 2.0 * kf {
        return Ok(0.0);
    }
    if xi >= kf * (kf * kf + 4.0).sqrt() {
        return Ok(pre * base);
    }
    let (a, b, c) = (xi + 2.0 * kf, -2.0 * kf * (xi + kf), xi * (kf * kf + 1.0) - 2.0 * kf);
    let disc = b * b - 4.0 * a * c;
    assert!(disc >= -1e-9 * b * b, "negative discriminant {disc} at K = {k}, xi = {xi}");
    let sq = disc.max(0.0).sqrt();
    let (x1, x2) = ((-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a));
    let r = (1.0 + x1 * x1) * (1.0 + (x2 - kf).powi(2)) / ((1.0 + x2 * x2) * (1.0 + (x1 - kf).powi(2)));
    Ok(pre * (base + r.ln()))
}
