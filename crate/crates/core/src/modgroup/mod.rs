//! Finite matrix groups over `Z/N` and integral Hecke coset representatives.

mod cosets;
mod group;
mod matrix;

pub use cosets::{
    factor_reps, hecke_cosets, in_delta, in_gamma_eps, lift_sigma, lift_to_sl2z, random_gamma_eps,
    reduce_to_coset, same_coset, same_full_coset, CosetPair, CosetReduction, CosetRep,
};
pub use group::{
    enumerate_sl2, enumerate_sl2_bounded, generated_subgroup, group_bound, level_change, normal_closure,
    reduction_kernel, reduction_kernel_bounded, sl2_order, LevelChange, MatrixGroup, DEFAULT_GROUP_BOUND,
    GROUP_BOUND_ENV,
};
pub use matrix::{IntMatrix, ModMatrix};

#[derive(Debug, thiserror::Error)]
pub enum ModGroupError {
    #[error("modulus {0} is too small; need N >= 2")]
    ModulusTooSmall(u64),
    #[error("N = {n} exceeds the enumeration bound {bound}")]
    BoundExceeded { n: u64, bound: u64 },
    #[error("{d} does not divide {n}")]
    NotADivisor { d: u64, n: u64 },
    #[error("{a} is not a unit mod {n}")]
    NotAUnit { a: i64, n: u64 },
    #[error("{0} is not in the group")]
    NotInGroup(String),
    #[error("determinant {det} is not a positive unit mod {n} matching the requested degree")]
    BadDeterminant { det: i64, n: u64 },
    #[error("pair violates the congruences of Delta_(eps={eps}, eps'={eps2}) mod {n}")]
    NotInDelta { eps: i64, eps2: i64, n: u64 },
}
