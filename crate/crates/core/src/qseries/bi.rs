use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize};

use super::{Coefficient, SeriesError};
use crate::exactmath::{arith, Rational};

/// A truncated two-variable expansion `sum c_{m1,m2} q1^m1 q2^m2`, exact for
/// `1 <= m1, m2 <= M`.
///
/// A series may carry a component label `eps`, in which case every stored
/// coefficient satisfies `eps*m1 + m2 = 0 (mod N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BiSeries<C = Rational> {
    level: u64,
    precision: u64,
    weight: (u32, u32),
    component: Option<u64>,
    coeffs: BTreeMap<(u64, u64), C>,
}

impl<C: Coefficient> BiSeries<C> {
    pub fn zero(level: u64, precision: u64, weight: (u32, u32)) -> Result<Self, SeriesError> {
        Self::from_map(level, precision, weight, None, BTreeMap::new())
    }

    pub fn from_coeffs(
        level: u64,
        precision: u64,
        weight: (u32, u32),
        component: Option<u64>,
        coeffs: impl IntoIterator<Item = ((u64, u64), C)>,
    ) -> Result<Self, SeriesError> {
        let mut map: BTreeMap<(u64, u64), C> = BTreeMap::new();
        for (k, c) in coeffs {
            match map.get_mut(&k) {
                Some(old) => *old = old.add(&c),
                None => {
                    map.insert(k, c);
                }
            }
        }
        Self::from_map(level, precision, weight, component, map)
    }

    pub(crate) fn from_map(
        level: u64,
        precision: u64,
        weight: (u32, u32),
        component: Option<u64>,
        mut coeffs: BTreeMap<(u64, u64), C>,
    ) -> Result<Self, SeriesError> {
        if level == 0 {
            return Err(SeriesError::BadLevel(level));
        }
        if precision == 0 {
            return Err(SeriesError::PrecisionExhausted);
        }
        coeffs.retain(|_, c| !c.is_zero());
        if let Some(&(m1, m2)) = coeffs.keys().find(|&&(a, b)| a == 0 || b == 0 || a > precision || b > precision) {
            return Err(SeriesError::IndexOutOfRange { index: m1.max(m2), precision });
        }
        let component = component.map(|e| arith::modn(e as i64, level));
        let s = BiSeries { level, precision, weight, component, coeffs };
        if let Some(eps) = s.component {
            if !arith::is_unit(eps as i64, level) {
                return Err(SeriesError::NotAUnit { value: eps, level });
            }
            if let Some((m1, m2)) = s.first_violation(eps) {
                return Err(SeriesError::VanishingViolated { m1, m2, eps });
            }
        }
        Ok(s)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn weight(&self) -> (u32, u32) {
        self.weight
    }

    pub fn component(&self) -> Option<u64> {
        self.component
    }

    /// Panics if either index exceeds the precision.
    pub fn get(&self, m1: u64, m2: u64) -> Option<&C> {
        assert!(
            m1 <= self.precision && m2 <= self.precision,
            "coefficient ({m1}, {m2}) requested from a series known only up to {}",
            self.precision
        );
        self.coeffs.get(&(m1, m2))
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), &C)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn first_violation(&self, eps: u64) -> Option<(u64, u64)> {
        let n = self.level as u128;
        self.coeffs
            .keys()
            .find(|&&(m1, m2)| (eps as u128 * m1 as u128 + m2 as u128) % n != 0)
            .copied()
    }

    /// True iff every nonzero coefficient lies on `eps*m1 + m2 = 0 (mod N)`.
    pub fn check_vanishing(&self, eps: i64) -> Result<bool, SeriesError> {
        if !arith::is_unit(eps, self.level) {
            return Err(SeriesError::NotAUnit { value: arith::modn(eps, self.level), level: self.level });
        }
        Ok(self.first_violation(arith::modn(eps, self.level)).is_none())
    }

    /// Attaches a component label, verifying the vanishing pattern.
    pub fn with_component(self, eps: i64) -> Result<Self, SeriesError> {
        let e = arith::modn(eps, self.level);
        Self::from_map(self.level, self.precision, self.weight, Some(e), self.coeffs)
    }

    /// `i_d`: keeps the coefficients with `d | m1` and `d | m2`.
    pub fn i_d(&self, d: u64) -> Result<Self, SeriesError> {
        if d == 0 || self.level % d != 0 {
            return Err(SeriesError::NotADivisor { d, level: self.level });
        }
        Ok(self.filter(|m1, m2| m1 % d == 0 && m2 % d == 0))
    }

    /// Keeps the coefficients with `gcd(m1 m2, N) = 1`, the representative of
    /// the series in the barred space.
    pub fn restrict_coprime(&self) -> Self {
        let n = self.level as i64;
        self.filter(|m1, m2| arith::gcd(m1 as i64, n) == 1 && arith::gcd(m2 as i64, n) == 1)
    }

    pub(crate) fn filter(&self, keep: impl Fn(u64, u64) -> bool) -> Self {
        BiSeries {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(a, b), _)| keep(a, b))
                .map(|(&k, c)| (k, c.clone()))
                .collect(),
            ..self.clone()
        }
    }

    pub fn truncate(&self, precision: u64) -> Result<Self, SeriesError> {
        if precision == 0 {
            return Err(SeriesError::PrecisionExhausted);
        }
        let precision = precision.min(self.precision);
        let mut out = self.filter(|a, b| a <= precision && b <= precision);
        out.precision = precision;
        Ok(out)
    }

    /// Coefficient-wise sum, exact up to the smaller precision. The
    /// component label survives only if both summands carry the same one.
    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.level != other.level {
            return Err(SeriesError::LevelMismatch(self.level, other.level));
        }
        let precision = self.precision.min(other.precision);
        let mut coeffs = self.truncate(precision)?.coeffs;
        for (&k, c) in other.coeffs.iter().filter(|(&(a, b), _)| a <= precision && b <= precision) {
            match coeffs.get_mut(&k) {
                Some(old) => *old = old.add(c),
                None => {
                    coeffs.insert(k, c.clone());
                }
            }
        }
        let component = if self.component == other.component { self.component } else { None };
        Self::from_map(self.level, precision, self.weight, component, coeffs)
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|_, c| c.neg())
    }

    pub fn map_coeffs<D: Coefficient>(&self, mut f: impl FnMut((u64, u64), &C) -> D) -> BiSeries<D> {
        BiSeries {
            level: self.level,
            precision: self.precision,
            weight: self.weight,
            component: self.component,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k, f(k, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub(crate) fn untagged(mut self) -> Self {
        self.component = None;
        self
    }
}

impl BiSeries<Rational> {
    pub fn value(&self, m1: u64, m2: u64) -> Rational {
        self.get(m1, m2).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        self.map_coeffs(|_, c| k * c)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.add(&other.neg())
    }

    /// Whether `self = k * other` for some rational `k` (possibly zero),
    /// compared up to the shared precision.
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<Rational> {
        let precision = self.precision.min(other.precision);
        let a = self.truncate(precision).ok()?;
        let b = other.truncate(precision).ok()?;
        let k = match b.coeffs.iter().next() {
            None => return a.is_zero().then(Rational::zero),
            Some((key, c)) => &a.value(key.0, key.1) / c,
        };
        (a.coeffs == b.scale(&k).coeffs).then_some(k)
    }
}

impl<C: Coefficient> Serialize for BiSeries<C> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<(u64, u64, &C)> = self.coeffs.iter().map(|(&(a, b), c)| (a, b, c)).collect();
        let mut st = serializer.serialize_struct("BiSeries", 4)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("weight", &[self.weight.0, self.weight.1])?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

#[derive(Deserialize)]
struct BiSeriesJson {
    level: u64,
    precision: u64,
    weight: [u32; 2],
    coeffs: Vec<(u64, u64, Rational)>,
}

impl<'de> Deserialize<'de> for BiSeries<Rational> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = BiSeriesJson::deserialize(deserializer)?;
        BiSeries::from_coeffs(
            raw.level,
            raw.precision,
            (raw.weight[0], raw.weight[1]),
            None,
            raw.coeffs.into_iter().map(|(a, b, c)| ((a, b), c)),
        )
        .map_err(serde::de::Error::custom)
    }
}
