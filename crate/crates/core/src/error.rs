use thiserror::Error;

use crate::poly2::Poly;

/// Message emitted when a requested vector cannot be realized.
pub const NO_SUCH_ELEMENT: &str = "There isn't such a normal element";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("ring size mismatch: {0} vs {1}")]
    RingSizeMismatch(usize, usize),

    #[error("{poly} is not a unit modulo x^{n}-1 (common factor {factor})")]
    NotUnit { n: usize, poly: Poly, factor: Poly },

    #[error("polynomial is not symmetric")]
    NotSymmetric,

    #[error("ring size {0} is not a power of two >= 4")]
    NotTwoPower(usize),

    #[error("ring size {0} is not odd")]
    NotOdd(usize),

    #[error("target is not in H: {0}")]
    NotInH(String),

    #[error("extension degree {0} outside the supported range 1..=64")]
    DegreeOutOfRange(usize),

    #[error("modulus {0} is not irreducible")]
    ReducibleModulus(Poly),

    #[error("modulus has degree {found:?}, expected {expected}")]
    ModulusDegree { expected: usize, found: Option<usize> },

    #[error("element 0x{bits:X} does not fit in GF(2^{n})")]
    ElementOutOfRange { bits: u64, n: usize },

    #[error("{t} does not divide {n}")]
    NotADivisor { t: usize, n: usize },

    #[error("element is not in the subfield GF(2^{0})")]
    NotInSubfield(usize),

    #[error("vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{NO_SUCH_ELEMENT}: {}", .0.join("; "))]
    InvalidVector(Vec<String>),

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("degree {n} exceeds the oracle cap {cap}")]
    OverCap { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    /// A postcondition failed after the computation finished. Seeing this
    /// means the implementation is wrong, not the input.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
