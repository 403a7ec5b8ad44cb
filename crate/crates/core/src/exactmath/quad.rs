use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{arith, MathError, Rational};

/// An element `(u + v*sqrt(-p))/2` of the maximal order of `Q(sqrt(-p))`,
/// `p` a prime congruent to 3 mod 4.
///
/// The half-integer encoding covers the whole ring `Z[(1 + sqrt(-p))/2]`;
/// membership in the ring is the parity condition `u = v (mod 2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadElem {
    p: u64,
    u: BigInt,
    v: BigInt,
}

impl QuadElem {
    pub fn new(p: u64, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self, MathError> {
        check_discriminant_prime(p)?;
        let (u, v) = (u.into(), v.into());
        if (&u - &v).is_odd() {
            return Err(MathError::NotIntegral { p, u: u.to_string(), v: v.to_string() });
        }
        Ok(QuadElem { p, u, v })
    }

    /// The rational integer `n`.
    pub fn from_int(p: u64, n: impl Into<BigInt>) -> Result<Self, MathError> {
        Self::new(p, n.into() * 2, 0)
    }

    pub fn zero(p: u64) -> Result<Self, MathError> {
        Self::new(p, 0, 0)
    }

    /// `sqrt(-p)` itself.
    pub fn sqrt_neg_p(p: u64) -> Result<Self, MathError> {
        Self::new(p, 0, 2)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// True when the element is a rational integer.
    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    /// The value as a rational number, if `v = 0`.
    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.u.clone(), 2).expect("nonzero denominator"))
    }

    /// Rational part `u/2`.
    pub fn real_part(&self) -> Rational {
        Rational::new(self.u.clone(), 2).expect("nonzero denominator")
    }

    /// Coefficient of `sqrt(-p)`, namely `v/2`.
    pub fn sqrt_part(&self) -> Rational {
        Rational::new(self.v.clone(), 2).expect("nonzero denominator")
    }

    pub fn conj(&self) -> Self {
        QuadElem { p: self.p, u: self.u.clone(), v: -&self.v }
    }

    /// `x * conj(x) = (u^2 + p v^2)/4`.
    pub fn norm(&self) -> BigInt {
        (&self.u * &self.u + BigInt::from(self.p) * &self.v * &self.v) / 4
    }

    pub fn trace(&self) -> BigInt {
        self.u.clone()
    }

    fn same_field(&self, other: &Self) -> Result<(), MathError> {
        if self.p != other.p {
            return Err(MathError::FieldMismatch(self.p, other.p));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MathError> {
        self.same_field(other)?;
        Ok(QuadElem { p: self.p, u: &self.u + &other.u, v: &self.v + &other.v })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MathError> {
        self.same_field(other)?;
        Ok(QuadElem { p: self.p, u: &self.u - &other.u, v: &self.v - &other.v })
    }

    pub fn neg(&self) -> Self {
        QuadElem { p: self.p, u: -&self.u, v: -&self.v }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        QuadElem { p: self.p, u: &self.u * k, v: &self.v * k }
    }

    /// Ring multiplication.
    pub fn quad_mul(&self, other: &Self) -> Result<Self, MathError> {
        self.same_field(other)?;
        let p = BigInt::from(self.p);
        let u = (&self.u * &other.u - p * &self.v * &other.v) / 2;
        let v = (&self.u * &other.v + &other.u * &self.v) / 2;
        Ok(QuadElem { p: self.p, u, v })
    }

    /// Exact division by a rational integer, when the quotient stays integral.
    pub fn div_exact(&self, k: &BigInt) -> Option<Self> {
        if k.is_zero() {
            return None;
        }
        let (qu, ru) = self.u.div_rem(k);
        let (qv, rv) = self.v.div_rem(k);
        if !ru.is_zero() || !rv.is_zero() || (&qu - &qv).is_odd() {
            return None;
        }
        Some(QuadElem { p: self.p, u: qu, v: qv })
    }
}

/// Free function form of [`QuadElem::quad_mul`].
pub fn quad_mul(x: &QuadElem, y: &QuadElem) -> Result<QuadElem, MathError> {
    x.quad_mul(y)
}

pub(crate) fn check_discriminant_prime(p: u64) -> Result<(), MathError> {
    if p % 4 != 3 || !arith::is_prime(p) {
        return Err(MathError::BadQuadraticPrime(p));
    }
    Ok(())
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.real_part());
        }
        let sign = if self.v.is_negative() { '-' } else { '+' };
        write!(f, "({} {} {}*sqrt(-{}))/2", self.u, sign, self.v.abs(), self.p)
    }
}

impl fmt::Debug for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadElem(p={}, u={}, v={})", self.p, self.u, self.v)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadElemJson {
    p: u64,
    u: String,
    v: String,
}

impl Serialize for QuadElem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadElemJson { p: self.p, u: self.u.to_string(), v: self.v.to_string() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadElem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw = QuadElemJson::deserialize(deserializer)?;
        let u: BigInt = raw.u.parse().map_err(D::Error::custom)?;
        let v: BigInt = raw.v.parse().map_err(D::Error::custom)?;
        QuadElem::new(raw.p, u, v).map_err(D::Error::custom)
    }
}
