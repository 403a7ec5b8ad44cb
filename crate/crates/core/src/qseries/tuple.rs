use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::Serialize;

use super::{BiSeries, SeriesError};
use crate::exactmath::{arith, Rational};

/// A form on the disjoint union of all components: one [`BiSeries`] per unit
/// `eps` mod `N`, each tagged with its `eps` and supported on the line
/// `eps*m1 + m2 = 0 (mod N)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TupleForm {
    level: u64,
    precision: u64,
    weight: (u32, u32),
    components: BTreeMap<u64, BiSeries>,
}

impl TupleForm {
    /// Builds a tuple from explicit components. Missing units get a zero
    /// component; every supplied series must carry its own label.
    pub fn from_components(
        level: u64,
        precision: u64,
        weight: (u32, u32),
        components: impl IntoIterator<Item = BiSeries>,
    ) -> Result<Self, SeriesError> {
        let mut map = BTreeMap::new();
        for c in components {
            if c.level() != level {
                return Err(SeriesError::LevelMismatch(level, c.level()));
            }
            let eps = c.component().ok_or(SeriesError::MissingComponentLabel)?;
            map.insert(eps, c.truncate(precision)?);
        }
        let precision = map.values().map(BiSeries::precision).min().unwrap_or(precision).min(precision);
        for eps in arith::units(level) {
            let entry = match map.remove(&eps) {
                Some(s) => s.truncate(precision)?,
                None => BiSeries::zero(level, precision, weight)?.with_component(eps as i64)?,
            };
            map.insert(eps, entry);
        }
        Ok(TupleForm { level, precision, weight, components: map })
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

    pub fn component(&self, eps: i64) -> Option<&BiSeries> {
        self.components.get(&arith::modn(eps, self.level))
    }

    pub fn components(&self) -> impl Iterator<Item = (u64, &BiSeries)> {
        self.components.iter().map(|(&e, s)| (e, s))
    }

    /// Labels of the components that are nonzero up to the precision.
    pub fn nonzero_components(&self) -> Vec<u64> {
        self.components.iter().filter(|(_, s)| !s.is_zero()).map(|(&e, _)| e).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(BiSeries::is_zero)
    }

    /// `c_{m1,m2}` for indices prime to `N`, read from the component
    /// `eps = -m2/m1`; zero for indices sharing a factor with `N`.
    pub fn coefficient(&self, m1: u64, m2: u64) -> Rational {
        let n = self.level;
        let Some(inv) = arith::mod_inv(m1 as i64, n) else {
            return Rational::zero();
        };
        if !arith::is_unit(m2 as i64, n) {
            return Rational::zero();
        }
        let eps = arith::modn(-((m2 % n * inv % n) as i64), n);
        self.components[&eps].value(m1, m2)
    }

    /// The sum of all components, an untagged two-variable series.
    pub fn sum(&self) -> BiSeries {
        let mut acc = BiSeries::zero(self.level, self.precision, self.weight).expect("valid shape");
        for s in self.components.values() {
            acc = acc.add(&s.clone().untagged()).expect("same level and precision");
        }
        acc
    }

    pub fn scale(&self, k: &Rational) -> Self {
        TupleForm {
            components: self.components.iter().map(|(&e, s)| (e, s.scale(k))).collect(),
            ..self.clone()
        }
    }

    pub fn truncate(&self, precision: u64) -> Result<Self, SeriesError> {
        let comps = self
            .components
            .values()
            .map(|s| s.truncate(precision))
            .collect::<Result<Vec<_>, _>>()?;
        TupleForm::from_components(self.level, precision.min(self.precision), self.weight, comps)
    }
}

/// Recovers the components of a form from its total expansion: component
/// `eps` keeps exactly the coefficients with `gcd(m_i, N) = 1` and
/// `eps*m1 + m2 = 0 (mod N)`. Coefficients with `gcd(m_i, N) > 1` are dropped.
pub fn split_components(f: &BiSeries) -> Result<TupleForm, SeriesError> {
    let n = f.level();
    let mut buckets: BTreeMap<u64, Vec<((u64, u64), Rational)>> = BTreeMap::new();
    for ((m1, m2), c) in f.iter() {
        let (Some(inv), true) = (arith::mod_inv(m1 as i64, n), arith::is_unit(m2 as i64, n)) else {
            continue;
        };
        let eps = arith::modn(-((m2 % n * inv % n) as i64), n);
        buckets.entry(eps).or_default().push(((m1, m2), c.clone()));
    }
    let comps = buckets
        .into_iter()
        .map(|(eps, cs)| BiSeries::from_coeffs(n, f.precision(), f.weight(), Some(eps), cs))
        .collect::<Result<Vec<_>, _>>()?;
    TupleForm::from_components(n, f.precision(), f.weight(), comps)
}

impl Serialize for TupleForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let comps: BTreeMap<String, &BiSeries> =
            self.components.iter().map(|(e, s)| (format!("{e:0>4}"), s)).collect();
        let mut st = serializer.serialize_struct("TupleForm", 4)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("weight", &[self.weight.0, self.weight.1])?;
        st.serialize_field("components", &comps)?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(level: u64, precision: u64, cs: &[((u64, u64), i64)]) -> BiSeries {
        BiSeries::from_coeffs(level, precision, (2, 2), None, cs.iter().map(|&(k, c)| (k, Rational::from_int(c))))
            .unwrap()
    }

    #[test]
    fn split_of_zero() {
        let t = split_components(&bi(7, 10, &[])).unwrap();
        assert!(t.is_zero());
        assert_eq!(t.components().count(), 6);
    }

    #[test]
    fn split_routes_coefficients() {
        let f = bi(7, 10, &[((1, 1), 1), ((1, 2), 5), ((2, 2), 3), ((7, 7), 9), ((1, 7), 4)]);
        let t = split_components(&f).unwrap();
        // (1,1), (2,2): eps = -1 = 6
        assert_eq!(t.component(-1).unwrap().len(), 2);
        // (1,2): eps = -2 = 5
        assert_eq!(t.component(5).unwrap().value(1, 2), Rational::from_int(5));
        assert_eq!(t.coefficient(1, 2), Rational::from_int(5));
        // indices sharing a factor with 7 are dropped
        assert_eq!(t.coefficient(7, 7), Rational::zero());
        assert_eq!(t.nonzero_components(), vec![5, 6]);
        for (eps, s) in t.components() {
            assert!(s.check_vanishing(eps as i64).unwrap());
        }
    }

    #[test]
    fn components_need_labels() {
        let err = TupleForm::from_components(7, 5, (2, 2), [bi(7, 5, &[((1, 1), 1)])]).unwrap_err();
        assert!(matches!(err, SeriesError::MissingComponentLabel));
    }

    proptest! {
        #[test]
        fn split_is_left_inverse_of_sum(
            raw in prop::collection::vec(((1u64..25, 1u64..25), -4i64..5), 0..60),
            level in prop::sample::select(vec![5u64, 7, 8, 9, 12]),
        ) {
            let f = bi(level, 25, &raw);
            let t = split_components(&f).unwrap();
            prop_assert_eq!(t.sum(), f.restrict_coprime());
            for (eps, s) in t.components() {
                prop_assert!(s.check_vanishing(eps as i64).unwrap());
            }
        }
    }
}
