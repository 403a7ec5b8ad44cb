//! Exact arithmetic: rationals, the maximal order of `Q(sqrt(-p))`,
//! elementary number theory and rank over `Q`.

pub mod arith;
mod matrix;
mod quad;
mod rational;

pub use arith::legendre;
pub use matrix::{rank_over_q, ExactMatrix};
pub use quad::{quad_mul, QuadElem};
pub use rational::Rational;

#[derive(Debug, thiserror::Error)]
pub enum MathError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not a prime congruent to 3 mod 4")]
    BadQuadraticPrime(u64),
    #[error("(u, v) = ({u}, {v}) is not an algebraic integer of Q(sqrt(-{p})): u and v differ in parity")]
    NotIntegral { p: u64, u: String, v: String },
    #[error("elements of Q(sqrt(-{0})) and Q(sqrt(-{1})) cannot be combined")]
    FieldMismatch(u64, u64),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}
