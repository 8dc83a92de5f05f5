//! One-dimensional quadrature for piecewise smooth integrands.
//!
//! The integrands in this workspace are positive parts of smooth functions, so they
//! have isolated kinks. Callers locate the kinks (analytically, or with
//! [`sign_change_roots`]) and pass them as breakpoints; each smooth piece is then
//! handled by adaptive Simpson with Richardson correction.

fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol || (m - a) <= f64::EPSILON * m.abs().max(1.0) {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson on `[a, b]` with absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth)
}

/// Adaptive Simpson started from `panels` equal subintervals, so narrow features
/// are not missed by the first coarse estimate.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    const PANELS: usize = 8;
    if b <= a {
        return 0.0;
    }
    let h = (b - a) / PANELS as f64;
    (0..PANELS)
        .map(|i| {
            let lo = a + h * i as f64;
            let hi = if i + 1 == PANELS { b } else { a + h * (i + 1) as f64 };
            adaptive_simpson(f, lo, hi, tol / PANELS as f64, 40)
        })
        .sum()
}

/// Integrates over `[a, b]` split at the given breakpoints (those outside are ignored).
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, breaks: &[f64], tol: f64) -> f64 {
    let mut pts: Vec<f64> = breaks.iter().copied().filter(|&x| x > a && x < b).collect();
    pts.push(a);
    pts.push(b);
    pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    pts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * y.abs().max(1.0));
    let n = (pts.len() - 1) as f64;
    pts.windows(2).map(|w| integrate(f, w[0], w[1], tol / n)).sum()
}

/// Bisection for a root of `g` in `[lo, hi]`, assuming a sign change.
pub fn bisect<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64) -> f64 {
    let mut glo = g(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let gm = g(mid);
        if gm == 0.0 {
            return mid;
        }
        if (gm < 0.0) == (glo < 0.0) {
            lo = mid;
            glo = gm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Roots of `g` located by scanning `n` equal cells of `[a, b]` for sign changes.
pub fn sign_change_roots<G: Fn(f64) -> f64>(g: &G, a: f64, b: f64, n: usize) -> Vec<f64> {
    let h = (b - a) / n as f64;
    let mut roots = Vec::new();
    let mut x0 = a;
    let mut g0 = g(a);
    for i in 1..=n {
        let x1 = if i == n { b } else { a + h * i as f64 };
        let g1 = g(x1);
        if g0 == 0.0 {
            roots.push(x0);
        } else if g1 != 0.0 && (g0 < 0.0) != (g1 < 0.0) {
            roots.push(bisect(g, x0, x1));
        }
        x0 = x1;
        g0 = g1;
    }
    roots
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let v = adaptive_simpson(&|x: f64| x * x * x, 0.0, 2.0, 1e-14, 30);
        assert!((v - 4.0).abs() < 1e-13);
    }

    #[test]
    fn smooth_transcendental() {
        let v = integrate(&|x: f64| x.sin(), 0.0, PI, 1e-13);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn kinked_with_breaks() {
        let f = |x: f64| (x - 1.0 / 3.0).abs();
        let v = integrate_with_breaks(&f, 0.0, 1.0, &[1.0 / 3.0], 1e-14);
        let exact = 0.5 * (1.0f64 / 9.0 + 4.0 / 9.0);
        assert!((v - exact).abs() < 1e-14);
    }

    #[test]
    fn finds_roots() {
        let r = sign_change_roots(&|x: f64| (3.0 * x).cos(), 0.0, 3.0, 64);
        assert_eq!(r.len(), 3);
        for (k, x) in r.iter().enumerate() {
            let expected = (PI / 2.0 + k as f64 * PI) / 3.0;
            assert!((x - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn quarter_disc_volume() {
        // ∫₀^{π/4} (area of quarter disc of radius cos t) / cos² t dt = π²/16
        let area = |t: f64| {
            let r2 = t.cos().powi(2);
            integrate(&|_phi: f64| 0.5 * r2, 0.0, PI / 2.0, 1e-15)
        };
        let v = integrate(&|t: f64| area(t) / t.cos().powi(2), 0.0, PI / 4.0, 1e-13);
        assert!((v - PI * PI / 16.0).abs() < 1e-12);
    }
}
