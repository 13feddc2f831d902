use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("division by zero in coefficient")]
    DivisionByZero,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("malformed polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("point has {got} coordinates, ring has {expected} variables")]
    LengthMismatch { expected: usize, got: usize },
    #[error("ideal basis is not a certified reduced Groebner basis")]
    NotGroebner,
    #[error("polynomial division is not exact")]
    InexactDivision,
    #[error("matrix is not homogeneous at entry ({row}, {col})")]
    Inhomogeneous { row: usize, col: usize },
    #[error("matrix shape error: {0}")]
    Shape(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("augmentation infeasible: {0}")]
    Infeasible(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("complex is not minimal: unit entry in differential {differential} at ({row}, {col})")]
    NonMinimal { differential: usize, row: usize, col: usize },
    #[error("characteristic {characteristic} too small for this construction (need > {bound})")]
    Characteristic { characteristic: u64, bound: usize },
}
