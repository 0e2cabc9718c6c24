use thiserror::Error;

use crate::qfield::Rational;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("unsupported Cartan type {kind}{rank}")]
    UnsupportedType { kind: String, rank: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("generator index {index} out of range 1..={max}")]
    InvalidGenerator { index: usize, max: usize },
    #[error("imaginary root has no coroot")]
    ImaginaryRoot,
    #[error("not a root: {0}")]
    NotARoot(String),
    #[error("element is not in the affine Weyl group")]
    NotInWeylGroup,
    #[error("zeta pole at argument {argument}{}", root.as_ref().map(|r| format!(" (root {r})")).unwrap_or_default())]
    ZetaPole { argument: i64, root: Option<String> },
    #[error("zeta argument {argument} is not an integer{}", root.as_ref().map(|r| format!(" (root {r})")).unwrap_or_default())]
    NonIntegralExponent { argument: Rational, root: Option<String> },
    #[error("invalid L-polynomial: {0}")]
    InvalidLPolynomial(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("values with different fractional q-exponents cannot be added")]
    IncompatibleExponent,
    #[error("rational function has a pole at q = {0}")]
    PoleAtQ0(Rational),
    #[error("character outside the admissible region: {0}")]
    RegionViolation(String),
    #[error("invalid place data: {0}")]
    InvalidPlaceData(String),
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),
    #[error("induction mismatch: closed form {closed} vs induction {induction}")]
    InductionMismatch { closed: Box<Rational>, induction: Box<Rational> },
}
