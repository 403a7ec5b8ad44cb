use serde::Serialize;

use super::SeriesError;
use crate::exactmath::arith;

/// A rational-valued Dirichlet character mod `N` (order 1 or 2), stored as
/// its value table on `0..N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Character {
    modulus: u64,
    values: Vec<i8>,
}

impl Character {
    pub fn trivial(modulus: u64) -> Self {
        let values = (0..modulus)
            .map(|a| if arith::is_unit(a as i64, modulus) { 1 } else { 0 })
            .collect();
        Character { modulus, values }
    }

    /// The Legendre symbol mod an odd prime.
    pub fn quadratic(p: u64) -> Result<Self, SeriesError> {
        let values = (0..p)
            .map(|a| arith::legendre(a as i64, p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| SeriesError::NotOddPrime(p))?;
        Ok(Character { modulus: p, values })
    }

    /// Validates an explicit value table. Anything that is not a character
    /// with values in `{-1, 0, 1}` is rejected: complex-valued characters are
    /// out of reach of rational coefficients.
    pub fn from_table(modulus: u64, table: &[i64]) -> Result<Self, SeriesError> {
        let not_quadratic = || SeriesError::NonQuadraticCharacter { modulus };
        if modulus == 0 || table.len() as u64 != modulus {
            return Err(not_quadratic());
        }
        let mut values = Vec::with_capacity(table.len());
        for (a, &v) in table.iter().enumerate() {
            let unit = arith::is_unit(a as i64, modulus);
            match (unit, v) {
                (true, 1 | -1) | (false, 0) => values.push(v as i8),
                _ => return Err(not_quadratic()),
            }
        }
        let chi = Character { modulus, values };
        for a in 0..modulus {
            for b in 0..modulus {
                if chi.eval(a * b) != chi.eval(a) * chi.eval(b) {
                    return Err(not_quadratic());
                }
            }
        }
        Ok(chi)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `chi(m)`, zero when `gcd(m, N) > 1`.
    pub fn eval(&self, m: u64) -> i8 {
        self.values[(m % self.modulus) as usize]
    }

    pub fn eval_signed(&self, m: i64) -> i8 {
        self.values[arith::modn(m, self.modulus) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v >= 0)
    }

    /// Units on which the character is 1.
    pub fn kernel(&self) -> Vec<u64> {
        (0..self.modulus).filter(|&a| self.values[a as usize] == 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_mod_7() {
        let chi = Character::quadratic(7).unwrap();
        assert_eq!(chi.kernel(), vec![1, 2, 4]);
        assert_eq!(chi.eval(3), -1);
        assert_eq!(chi.eval(14), 0);
        assert_eq!(chi.eval_signed(-1), -1);
        assert!(!chi.is_trivial());
        assert!(Character::trivial(7).is_trivial());
    }

    #[test]
    fn table_validation() {
        assert!(Character::from_table(4, &[0, 1, 0, -1]).is_ok());
        // not multiplicative
        assert!(Character::from_table(5, &[0, 1, -1, 1, -1]).is_err());
        // value outside {-1, 0, 1}: e.g. someone encoding an order-3 value as 2
        assert!(Character::from_table(7, &[0, 1, 2, 1, 1, 1, 1]).is_err());
        // nonzero on a non-unit
        assert!(Character::from_table(4, &[1, 1, 0, -1]).is_err());
        assert!(Character::from_table(4, &[0, 1]).is_err());
    }

    #[test]
    fn table_roundtrip_of_legendre() {
        let chi = Character::quadratic(11).unwrap();
        let table: Vec<i64> = (0..11).map(|a| chi.eval(a) as i64).collect();
        assert_eq!(Character::from_table(11, &table).unwrap(), chi);
    }
}
