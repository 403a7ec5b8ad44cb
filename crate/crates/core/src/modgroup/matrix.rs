use std::fmt;

use serde::Serialize;

use super::ModGroupError;
use crate::exactmath::arith;

/// A 2x2 matrix with entries reduced into `0..N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModMatrix {
    n: u64,
    a: u64,
    b: u64,
    c: u64,
    d: u64,
}

impl ModMatrix {
    pub fn new(n: u64, a: i64, b: i64, c: i64, d: i64) -> Self {
        assert!(n >= 1, "modulus must be positive");
        ModMatrix { n, a: arith::modn(a, n), b: arith::modn(b, n), c: arith::modn(c, n), d: arith::modn(d, n) }
    }

    pub fn identity(n: u64) -> Self {
        Self::new(n, 1, 0, 0, 1)
    }

    /// `[[1, t], [0, 1]]`.
    pub fn tau(n: u64, t: i64) -> Self {
        Self::new(n, 1, t, 0, 1)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> u64 {
        let n = self.n as u128;
        let ad = self.a as u128 * self.d as u128 % n;
        let bc = self.b as u128 * self.c as u128 % n;
        ((ad + n - bc) % n) as u64
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n, "moduli differ");
        let n = self.n as u128;
        let f = |x: u64, y: u64, z: u64, w: u64| ((x as u128 * y as u128 + z as u128 * w as u128) % n) as u64;
        ModMatrix {
            n: self.n,
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    /// Inverse of a determinant-one matrix.
    pub fn sl2_inverse(&self) -> Self {
        debug_assert_eq!(self.det(), 1 % self.n);
        Self::new(self.n, self.d as i64, -(self.b as i64), -(self.c as i64), self.a as i64)
    }

    /// `[[a, b], [c, d]] -> [[a, eps^-1 b], [eps c, d]]`.
    pub fn theta(&self, eps: i64) -> Result<Self, ModGroupError> {
        let n = self.n;
        let inv = arith::mod_inv(eps, n).ok_or(ModGroupError::NotAUnit { a: eps, n })?;
        let e = arith::modn(eps, n) as u128;
        Ok(ModMatrix {
            n,
            a: self.a,
            b: (self.b as u128 * inv as u128 % n as u128) as u64,
            c: (self.c as u128 * e % n as u128) as u64,
            d: self.d,
        })
    }

    /// Reduction to a divisor of the modulus.
    pub fn reduce(&self, m: u64) -> Self {
        assert!(self.n % m == 0, "{m} does not divide {}", self.n);
        Self::new(m, self.a as i64, self.b as i64, self.c as i64, self.d as i64)
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]] mod {}", self.a, self.b, self.c, self.d, self.n)
    }
}

impl Serialize for ModMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [[self.a, self.b], [self.c, self.d]].serialize(s)
    }
}

/// A 2x2 integer matrix. Products panic on `i64` overflow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMatrix {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMatrix { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    /// `[[1, x], [0, 1]]`.
    pub const fn translation(x: i64) -> Self {
        Self::new(1, x, 0, 1)
    }

    pub fn det(&self) -> i64 {
        narrow(self.a as i128 * self.d as i128 - self.b as i128 * self.c as i128)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let dot = |x: i64, y: i64, z: i64, w: i64| narrow(x as i128 * y as i128 + z as i128 * w as i128);
        IntMatrix {
            a: dot(self.a, o.a, self.b, o.c),
            b: dot(self.a, o.b, self.b, o.d),
            c: dot(self.c, o.a, self.d, o.c),
            d: dot(self.c, o.b, self.d, o.d),
        }
    }

    /// `[[d, -b], [-c, a]]`, so that `m * m.adjugate() = det(m)`.
    pub fn adjugate(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    /// Exact division of every entry, if possible.
    pub fn div_exact(&self, k: i64) -> Option<Self> {
        let e = [self.a, self.b, self.c, self.d];
        if k == 0 || e.iter().any(|x| x % k != 0) {
            return None;
        }
        Some(Self::new(self.a / k, self.b / k, self.c / k, self.d / k))
    }

    pub fn reduce(&self, n: u64) -> ModMatrix {
        ModMatrix::new(n, self.a, self.b, self.c, self.d)
    }

    pub fn is_sl2(&self) -> bool {
        self.det() == 1
    }
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("integer matrix entry overflowed i64")
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [[self.a, self.b], [self.c, self.d]].serialize(s)
    }
}
