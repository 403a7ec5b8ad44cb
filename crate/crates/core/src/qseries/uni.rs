use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::Serialize;

use super::{BiSeries, Character, Coefficient, SeriesError};
use crate::exactmath::{arith, Rational};

/// A truncated q-expansion `sum_{1 <= m <= M} c_m q^m` with `q = e^{2 pi i z / N}`.
///
/// Coefficients are known exactly up to the precision `M`; absent keys are
/// zero and zero is never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct UniSeries<C = Rational> {
    level: u64,
    precision: u64,
    weight: u32,
    coeffs: BTreeMap<u64, C>,
}

impl<C: Coefficient> UniSeries<C> {
    pub fn zero(level: u64, precision: u64, weight: u32) -> Result<Self, SeriesError> {
        if level == 0 {
            return Err(SeriesError::BadLevel(level));
        }
        if precision == 0 {
            return Err(SeriesError::PrecisionExhausted);
        }
        Ok(UniSeries { level, precision, weight, coeffs: BTreeMap::new() })
    }

    pub fn from_coeffs(
        level: u64,
        precision: u64,
        weight: u32,
        coeffs: impl IntoIterator<Item = (u64, C)>,
    ) -> Result<Self, SeriesError> {
        let mut s = Self::zero(level, precision, weight)?;
        for (m, c) in coeffs {
            if m == 0 || m > precision {
                return Err(SeriesError::IndexOutOfRange { index: m, precision });
            }
            s.add_at(m, &c);
        }
        Ok(s)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// The coefficient `c_m`, `None` meaning zero.
    ///
    /// Panics if `m` exceeds the precision: such coefficients are unknown,
    /// not zero.
    pub fn get(&self, m: u64) -> Option<&C> {
        assert!(
            m <= self.precision,
            "coefficient {m} requested from a series known only up to {}",
            self.precision
        );
        self.coeffs.get(&m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &C)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub(crate) fn add_at(&mut self, m: u64, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&m) {
            Some(old) => {
                let sum = old.add(c);
                if sum.is_zero() {
                    self.coeffs.remove(&m);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.coeffs.insert(m, c.clone());
            }
        }
    }

    pub fn truncate(&self, precision: u64) -> Result<Self, SeriesError> {
        if precision == 0 {
            return Err(SeriesError::PrecisionExhausted);
        }
        let precision = precision.min(self.precision);
        Ok(UniSeries {
            level: self.level,
            precision,
            weight: self.weight,
            coeffs: self.coeffs.range(..=precision).map(|(&m, c)| (m, c.clone())).collect(),
        })
    }

    /// Sum of two series; the result is known up to the smaller precision.
    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.level != other.level {
            return Err(SeriesError::LevelMismatch(self.level, other.level));
        }
        let mut out = self.truncate(other.precision)?;
        for (m, c) in other.coeffs.range(..=out.precision) {
            out.add_at(*m, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        UniSeries {
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, c.neg())).collect(),
            ..self.clone()
        }
    }

    /// Keeps only `c_m` with `gcd(m, N) = 1`.
    pub fn restrict_coprime(&self) -> Self {
        UniSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&m, _)| arith::is_unit(m as i64, self.level))
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    /// Applies `f` to every coefficient, dropping those that become zero.
    pub fn map_coeffs<D: Coefficient>(&self, mut f: impl FnMut(u64, &C) -> D) -> UniSeries<D> {
        UniSeries {
            level: self.level,
            precision: self.precision,
            weight: self.weight,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&m, c)| (m, f(m, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl UniSeries<Rational> {
    /// `c_m` as a rational, zero when absent.
    pub fn value(&self, m: u64) -> Rational {
        self.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map_coeffs(|_, c| k * c)
    }

    /// `c_m(f_psi) = psi(m) c_m(f)`.
    pub fn twist(&self, psi: &Character) -> Result<Self, SeriesError> {
        twist(self, psi)
    }
}

/// The map `f1 (x) f2 -> f1(z1) f2(z2)` on truncated expansions.
pub fn tensor<C: Coefficient>(f1: &UniSeries<C>, f2: &UniSeries<C>) -> Result<BiSeries<C>, SeriesError> {
    if f1.level != f2.level {
        return Err(SeriesError::LevelMismatch(f1.level, f2.level));
    }
    let precision = f1.precision.min(f2.precision);
    let mut coeffs = BTreeMap::new();
    for (&m1, c1) in f1.coeffs.range(..=precision) {
        for (&m2, c2) in f2.coeffs.range(..=precision) {
            let c = c1.mul(c2);
            if !c.is_zero() {
                coeffs.insert((m1, m2), c);
            }
        }
    }
    BiSeries::from_map(f1.level, precision, (f1.weight, f2.weight), None, coeffs)
}

/// Twist by a rational-valued character of the same modulus as the level.
pub fn twist(f: &UniSeries<Rational>, psi: &Character) -> Result<UniSeries<Rational>, SeriesError> {
    if psi.modulus() != f.level {
        return Err(SeriesError::LevelMismatch(f.level, psi.modulus()));
    }
    Ok(f.map_coeffs(|m, c| match psi.eval(m) {
        1 => c.clone(),
        -1 => -c,
        _ => Rational::zero(),
    }))
}

impl<C: Coefficient> Serialize for UniSeries<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<(u64, &C)> = self.iter().collect();
        let mut st = serializer.serialize_struct("UniSeries", 4)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}
