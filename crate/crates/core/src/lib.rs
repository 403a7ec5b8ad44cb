//! Exact q-expansions on surfaces of pairs of elliptic curves with isomorphic
//! `N`-torsion: component forms, Hecke operators, CM theta series of
//! imaginary quadratic fields and the congruence-group facts behind them.

pub mod classgroup;
pub mod cli;
pub mod ecoracle;
pub mod exactmath;
pub mod hecke;
pub mod modgroup;
pub mod qseries;
pub mod theta;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/overview.md")]
    mod overview {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/q-expansions.md")]
    mod q_expansions {}
    #[doc = include_str!("../../../book/src/ideal-classes.md")]
    mod ideal_classes {}
    #[doc = include_str!("../../../book/src/theta-series.md")]
    mod theta_series {}
    #[doc = include_str!("../../../book/src/hecke-operators.md")]
    mod hecke_operators {}
    #[doc = include_str!("../../../book/src/congruence-groups.md")]
    mod congruence_groups {}
    #[doc = include_str!("../../../book/src/curve-oracle.md")]
    mod curve_oracle {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    mod command_line {}
}
