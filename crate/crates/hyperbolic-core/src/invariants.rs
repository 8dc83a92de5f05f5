use crate::error::CoreError;
use crate::matrix::UnimodularMatrix;

/// Quadratic invariants of `g = (a b; c d)` and the derived angle data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaInvariants {
    /// `a² + b²`
    pub x: i128,
    /// `c² + d²`
    pub y: i128,
    /// `ac + bd`
    pub z: i128,
    /// `X + Y = ‖g‖²`
    pub t: i128,
    pub epsilon: f64,
    /// `Re(g·i) = Z / Y`
    pub phi: f64,
    /// `tan(θ/2)`
    pub psi: f64,
    /// Angle between the vertical geodesic `[i, 0]` and the ray `[i, g·i]`.
    pub theta: f64,
}

fn sq(v: i64) -> i128 {
    (v as i128) * (v as i128)
}

fn add(p: i128, q: i128) -> Result<i128, CoreError> {
    p.checked_add(q).ok_or(CoreError::Overflow("invariants"))
}

/// `ε = (T − √(T² − 4)) / 2`, evaluated as `2 / (T + √((T−2)(T+2)))` to avoid cancellation.
pub fn epsilon_of_trace(t: f64) -> f64 {
    2.0 / (t + ((t - 2.0) * (t + 2.0)).sqrt())
}

pub fn invariants(g: &UnimodularMatrix) -> Result<GammaInvariants, CoreError> {
    let x = add(sq(g.a), sq(g.b))?;
    let y = add(sq(g.c), sq(g.d))?;
    let ac = (g.a as i128) * (g.c as i128);
    let bd = (g.b as i128) * (g.d as i128);
    let z = add(ac, bd)?;
    let t = add(x, y)?;
    let tf = t as f64;
    let epsilon = epsilon_of_trace(tf);
    let phi = z as f64 / y as f64;
    let psi = if z == 0 { 0.0 } else { (x as f64 - epsilon) / z as f64 };
    Ok(GammaInvariants { x, y, z, t, epsilon, phi, psi, theta: 2.0 * psi.atan() })
}

impl GammaInvariants {
    /// The second expression `Z / (Y − ε)` for `tan(θ/2)`.
    pub fn psi_alt(&self) -> f64 {
        if self.z == 0 {
            0.0
        } else {
            self.z as f64 / (self.y as f64 - self.epsilon)
        }
    }

    /// `Ψ − Φ` in the closed form `Z / (Y (Y/ε − 1))`.
    pub fn psi_minus_phi(&self) -> f64 {
        let y = self.y as f64;
        self.z as f64 / (y * (y / self.epsilon - 1.0))
    }

    /// The angle on the `(2/π)θ` scale.
    pub fn angle_unit(&self) -> f64 {
        self.theta * std::f64::consts::FRAC_2_PI
    }
}

/// `d(i, g·i) = arccosh(‖g‖² / 2)`.
pub fn hyperbolic_distance_from_i(g: &UnimodularMatrix) -> Result<f64, CoreError> {
    let t = g.norm_sq()? as f64;
    Ok(acosh_half(t))
}

/// `arccosh(t/2)` written as `ln((t + √(t²−4))/2)`, exact at `t = 2`.
pub fn acosh_half(t: f64) -> f64 {
    ((t + ((t - 2.0) * (t + 2.0)).max(0.0).sqrt()) / 2.0).ln()
}

/// Hyperbolic distance between two points of the upper half-plane.
pub fn distance(p: (f64, f64), q: (f64, f64)) -> f64 {
    let dx = p.0 - q.0;
    let dy = p.1 - q.1;
    let arg = 1.0 + (dx * dx + dy * dy) / (2.0 * p.1 * q.1);
    arg.acosh()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> UnimodularMatrix {
        UnimodularMatrix::new(a, b, c, d).unwrap()
    }

    #[test]
    fn identity_invariants() {
        let inv = invariants(&UnimodularMatrix::IDENTITY).unwrap();
        assert_eq!((inv.x, inv.y, inv.z, inv.t), (1, 1, 0, 2));
        assert_eq!(inv.epsilon, 1.0);
        assert_eq!(inv.theta, 0.0);
    }

    #[test]
    fn l_invariants() {
        let inv = invariants(&m(1, 0, 1, 1)).unwrap();
        assert_eq!((inv.x, inv.y, inv.z, inv.t), (1, 2, 1, 3));
        assert!((inv.phi - 0.5).abs() < 1e-15);
        assert!((inv.psi - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-15);
        assert!((inv.theta - 1.107149).abs() < 1e-6);
        assert!((inv.psi - inv.psi_alt()).abs() < 1e-15);
    }

    #[test]
    fn lr_invariants() {
        let inv = invariants(&m(1, 1, 1, 2)).unwrap();
        assert_eq!((inv.x, inv.y, inv.z, inv.t), (2, 5, 3, 7));
        assert!((inv.phi - 0.6).abs() < 1e-15);
    }

    #[test]
    fn distances() {
        assert_eq!(hyperbolic_distance_from_i(&UnimodularMatrix::IDENTITY).unwrap(), 0.0);
        let d = hyperbolic_distance_from_i(&m(1, 0, 1, 1)).unwrap();
        assert!((d - 1.5f64.acosh()).abs() < 1e-15);
        assert!((d - 0.962424).abs() < 1e-6);
        let d = hyperbolic_distance_from_i(&m(1, 1, 1, 2)).unwrap();
        assert!((d - 1.924847).abs() < 1e-6);
    }

    #[test]
    fn distance_matches_norm_formula() {
        let g = m(3, 2, 4, 3);
        let p = g.act_on_i();
        let d = distance((0.0, 1.0), p);
        assert!((d - hyperbolic_distance_from_i(&g).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn overflow_is_explicit() {
        let big = i64::MAX;
        let g = UnimodularMatrix { a: big, b: big, c: big, d: big };
        assert!(invariants(&g).is_err());
    }
}
