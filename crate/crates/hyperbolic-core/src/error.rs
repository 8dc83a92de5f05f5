use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("determinant is {0}, expected 1")]
    Determinant(i128),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("no quadrant-I representative for ±I or ±s")]
    NoQuadrantRepresentative,
    #[error("invalid word letter {0:?}, expected L or R")]
    BadLetter(char),
    #[error("shift function undefined at (0, 0)")]
    ZeroVector,
}
