use std::fmt;

use serde::Serialize;

use crate::exactmath::{QuadElem, Rational};

/// Ring operations a series coefficient needs.
///
/// Series never mix coefficient fields, so the `QuadElem` implementation
/// treats a discriminant mismatch as a logic error and panics.
pub trait Coefficient: Clone + PartialEq + fmt::Debug + fmt::Display + Serialize {
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

impl Coefficient for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl Coefficient for QuadElem {
    fn is_zero(&self) -> bool {
        QuadElem::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(other).expect("series coefficients from different fields")
    }
    fn mul(&self, other: &Self) -> Self {
        self.quad_mul(other).expect("series coefficients from different fields")
    }
    fn neg(&self) -> Self {
        QuadElem::neg(self)
    }
}
