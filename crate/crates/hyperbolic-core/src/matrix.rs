use std::fmt;

use crate::error::CoreError;

/// A 2×2 integer matrix `(a b; c d)` with `ad − bc = 1`.
///
/// Entries are `i64`; the determinant is checked in `i128` so construction never
/// silently wraps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnimodularMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl UnimodularMatrix {
    pub const IDENTITY: Self = Self { a: 1, b: 0, c: 0, d: 1 };
    /// `L = (1 0; 1 1)`
    pub const L: Self = Self { a: 1, b: 0, c: 1, d: 1 };
    /// `R = (1 1; 0 1)`
    pub const R: Self = Self { a: 1, b: 1, c: 0, d: 1 };
    /// `s = (0 −1; 1 0)`
    pub const S: Self = Self { a: 0, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, CoreError> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(CoreError::Determinant(det));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.a >= 0 && self.b >= 0 && self.c >= 0 && self.d >= 0
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self, CoreError> {
        let dot = |x: i64, y: i64, u: i64, v: i64| {
            x.checked_mul(y)
                .and_then(|p| u.checked_mul(v).and_then(|q| p.checked_add(q)))
                .ok_or(CoreError::Overflow("matrix product"))
        };
        Ok(Self {
            a: dot(self.a, o.a, self.b, o.c)?,
            b: dot(self.a, o.b, self.b, o.d)?,
            c: dot(self.c, o.a, self.d, o.c)?,
            d: dot(self.c, o.b, self.d, o.d)?,
        })
    }

    /// Product of a word over `{L, R}`, multiplied left to right.
    pub fn from_word(word: &str) -> Result<Self, CoreError> {
        let mut m = Self::IDENTITY;
        for ch in word.chars() {
            let g = match ch {
                'L' => Self::L,
                'R' => Self::R,
                other => return Err(CoreError::BadLetter(other)),
            };
            m = m.checked_mul(&g)?;
        }
        Ok(m)
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn transpose(&self) -> Self {
        Self { a: self.a, b: self.c, c: self.b, d: self.d }
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    /// `γ̃ = (d c; b a)`
    pub fn tilde(&self) -> Self {
        Self { a: self.d, b: self.c, c: self.b, d: self.a }
    }

    /// `η M η` with `η = (0 1; 1 0)`; the same matrix as [`Self::tilde`].
    pub fn eta_conjugate(&self) -> Self {
        Self { a: self.d, b: self.c, c: self.b, d: self.a }
    }

    pub fn trace(&self) -> i128 {
        self.a as i128 + self.d as i128
    }

    /// `‖g‖² = a² + b² + c² + d²`
    pub fn norm_sq(&self) -> Result<i128, CoreError> {
        let mut s: i128 = 0;
        for e in self.entries() {
            let e = e as i128;
            s = s
                .checked_add(e.checked_mul(e).ok_or(CoreError::Overflow("norm"))?)
                .ok_or(CoreError::Overflow("norm"))?;
        }
        Ok(s)
    }

    /// Action on `i`: returns `(Re, Im)` of `g·i`.
    pub fn act_on_i(&self) -> (f64, f64) {
        let y = (self.c as f64).powi(2) + (self.d as f64).powi(2);
        let z = self.a as f64 * self.c as f64 + self.b as f64 * self.d as f64;
        (z / y, 1.0 / y)
    }
}

impl fmt::Display for UnimodularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_determinant() {
        assert_eq!(UnimodularMatrix::new(1, 1, 1, 1), Err(CoreError::Determinant(0)));
        assert!(UnimodularMatrix::new(2, 3, 3, 5).is_ok());
    }

    #[test]
    fn words_multiply_left_to_right() {
        let lr = UnimodularMatrix::from_word("LR").unwrap();
        assert_eq!(lr, UnimodularMatrix::new(1, 1, 1, 2).unwrap());
        let rl = UnimodularMatrix::from_word("RL").unwrap();
        assert_eq!(rl, UnimodularMatrix::new(2, 1, 1, 1).unwrap());
        let llr = UnimodularMatrix::from_word("LLR").unwrap();
        assert_eq!(llr, UnimodularMatrix::new(1, 1, 2, 3).unwrap());
    }

    #[test]
    fn product_overflow_is_reported() {
        let big = UnimodularMatrix::new(1, i64::MAX / 2, 0, 1).unwrap();
        assert!(big.checked_mul(&big).is_ok());
        let r = big.checked_mul(&big).unwrap();
        assert!(r.checked_mul(&big).is_err());
    }

    #[test]
    fn inverse_and_eta() {
        let g = UnimodularMatrix::new(2, 1, 3, 2).unwrap();
        assert_eq!(g.checked_mul(&g.inverse()).unwrap(), UnimodularMatrix::IDENTITY);
        // ηLη = R
        assert_eq!(UnimodularMatrix::L.eta_conjugate(), UnimodularMatrix::R);
    }
}
