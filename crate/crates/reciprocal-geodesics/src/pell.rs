use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::GeodesicError;

/// The minimal positive solution `(u₀, v₀)` of `u² − d v² = 4`.
///
/// For a discriminant (`d ≡ 0, 1 mod 4`) this is the fundamental unit of the order of
/// discriminant `d`: expand `ω = (σ + √d)/2`, `σ = d mod 2`, as a continued fraction. The
/// first convergent `p/q` with `N(p − q ω̄) = ±1` ends the first period; it gives
/// `u = 2p − σq`, `v = q`, and a norm `−1` unit is squared. For `d ≡ 2, 3 mod 4` every
/// solution has `u, v` even, so we solve for `4d` and double `v`.
pub fn pell_fundamental(d: i128) -> Result<(BigInt, BigInt), GeodesicError> {
    if d <= 0 || d.sqrt() * d.sqrt() == d {
        return Err(GeodesicError::BadDiscriminant(d));
    }
    if d.rem_euclid(4) >= 2 {
        let (u, v) = pell_fundamental(4 * d)?;
        return Ok((u, v * 2));
    }
    let sigma = d % 2;
    let root = d.sqrt();
    let dd = BigInt::from(d);
    let four = BigInt::from(4);
    // ω_n = (P + √d)/Q, starting from (σ + √d)/2
    let (mut pp, mut qq) = (sigma, 2i128);
    // (p_{n−2}, p_{n−1}) and (q_{n−2}, q_{n−1})
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (pp + root) / qq;
        let p_next = &p * a + &p_prev;
        let q_next = &q * a + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        let u = BigInt::from(2) * &p - BigInt::from(sigma) * &q;
        let norm = &u * &u - &dd * &q * &q;
        if norm == four {
            return Ok((u, q));
        }
        if norm == -four.clone() {
            let u2 = (&u * &u + &dd * &q * &q) / 2;
            let v2 = &u * &q;
            return Ok((u2, v2));
        }
        pp = a * qq - pp;
        qq = (d - pp * pp) / qq;
    }
}

/// `α_d = (u₀ + v₀√d)/2`, as a float (`+∞` if it does not fit).
pub fn alpha_of(d: i128, u0: &BigInt, v0: &BigInt) -> f64 {
    let u = u0.to_f64().unwrap_or(f64::INFINITY);
    let v = v0.to_f64().unwrap_or(f64::INFINITY);
    0.5 * (u + v * (d as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(d: i128) -> Option<(i128, i128)> {
        (1..=1000i128).find_map(|v| {
            let n = d * v * v + 4;
            let u = n.sqrt();
            (u * u == n).then_some((u, v))
        })
    }

    #[test]
    fn examples() {
        let (u, v) = pell_fundamental(5).unwrap();
        assert_eq!((u, v), (BigInt::from(3), BigInt::from(1)));
        assert!((alpha_of(5, &BigInt::from(3), &BigInt::from(1)) - 2.618034).abs() < 1e-6);
        let (u, v) = pell_fundamental(8).unwrap();
        assert_eq!((u.clone(), v.clone()), (BigInt::from(6), BigInt::from(2)));
        assert!((alpha_of(8, &u, &v) - 5.828427).abs() < 1e-6);
        assert!(pell_fundamental(4).is_err());
        assert!(pell_fundamental(0).is_err());
        assert!(pell_fundamental(-3).is_err());
    }

    #[test]
    fn against_brute_force_all_residues() {
        for d in 2..=300i128 {
            if d.sqrt() * d.sqrt() == d {
                continue;
            }
            let (u, v) = pell_fundamental(d).unwrap();
            assert_eq!(&u * &u - BigInt::from(d) * &v * &v, BigInt::from(4), "d = {d}");
            if let Some((bu, bv)) = brute(d) {
                assert_eq!((u, v), (BigInt::from(bu), BigInt::from(bv)), "d = {d}");
            }
        }
    }

    #[test]
    fn large_units_do_not_overflow() {
        // d = 94 has a fundamental unit with a 7-digit v; 661 a much larger one
        for d in [94i128, 661, 9949] {
            let (u, v) = pell_fundamental(d).unwrap();
            assert_eq!(&u * &u - BigInt::from(d) * &v * &v, BigInt::from(4));
        }
    }
}
