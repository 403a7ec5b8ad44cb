//! Truncated exact q-expansions in one and two variables.
//!
//! Every series carries the precision up to which its coefficients are
//! exactly known. Operations that read coefficients at multiples `m*n`
//! shrink the precision accordingly, and reading past it panics rather than
//! returning a silent zero.

mod bi;
mod character;
mod coeff;
mod tuple;
mod uni;

pub use bi::BiSeries;
pub use character::Character;
pub use coeff::Coefficient;
pub use tuple::{split_components, TupleForm};
pub use uni::{tensor, twist, UniSeries};

/// `c_{m1,m2}(f) = 0` unless `eps*m1 + m2 = 0 (mod N)`.
pub fn check_vanishing<C: Coefficient>(f: &BiSeries<C>, eps: i64) -> Result<bool, SeriesError> {
    f.check_vanishing(eps)
}

#[derive(Debug, thiserror::Error)]
pub enum SeriesError {
    #[error("levels differ: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("level must be positive, got {0}")]
    BadLevel(u64),
    #[error("{value} is not a unit mod {level}")]
    NotAUnit { value: u64, level: u64 },
    #[error("{d} does not divide the level {level}")]
    NotADivisor { d: u64, level: u64 },
    #[error("index {index} outside 1..={precision}")]
    IndexOutOfRange { index: u64, precision: u64 },
    #[error("precision exhausted: the result would carry no exact coefficients")]
    PrecisionExhausted,
    #[error("coefficient ({m1}, {m2}) is nonzero off the line {eps}*m1 + m2 = 0")]
    VanishingViolated { m1: u64, m2: u64, eps: u64 },
    #[error("component series is missing its eps label")]
    MissingComponentLabel,
    #[error("character mod {modulus} is not rational-valued (order 1 or 2)")]
    NonQuadraticCharacter { modulus: u64 },
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
}
