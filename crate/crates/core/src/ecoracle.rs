//! Coefficients of the weight-2 newform attached to an elliptic curve over
//! `Q`, computed independently of any modular machinery: naive point counts
//! at primes, then multiplicativity and the prime-power recursion.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exactmath::{arith, Rational};
use crate::qseries::UniSeries;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{q} divides the discriminant {disc}: bad reduction")]
    BadReduction { q: u64, disc: i64 },
    #[error("a_{q} = {a} violates the Hasse bound")]
    HasseViolated { q: u64, a: i64 },
    #[error("singular model: discriminant is zero")]
    Singular,
}

/// `y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveSpec {
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
    pub a4: i64,
    pub a6: i64,
    pub label: String,
    /// Level of the produced series in the `q = e^{2 pi i z / N}` convention.
    pub level: u64,
}

impl CurveSpec {
    pub fn new(coeffs: [i64; 5], label: &str, level: u64) -> Result<Self, OracleError> {
        let [a1, a2, a3, a4, a6] = coeffs;
        let c = CurveSpec { a1, a2, a3, a4, a6, label: label.to_string(), level };
        if c.discriminant() == 0 {
            return Err(OracleError::Singular);
        }
        Ok(c)
    }

    /// `y^2 + x y = x^3 - x^2 - 2 x - 1`, conductor 49, CM by `Q(sqrt(-7))`,
    /// producing a series at level 7.
    pub fn conductor_49() -> Self {
        Self::new([1, -1, 0, -2, -1], "49a", 7).expect("nonsingular model")
    }

    pub fn discriminant(&self) -> i64 {
        let (a1, a2, a3, a4, a6) = (self.a1, self.a2, self.a3, self.a4, self.a6);
        let b2 = a1 * a1 + 4 * a2;
        let b4 = 2 * a4 + a1 * a3;
        let b6 = a3 * a3 + 4 * a6;
        let b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
        -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        arith::prime_divisors(self.discriminant().unsigned_abs())
    }

    /// `#E(F_q)` including the point at infinity, by scanning all `(x, y)`.
    /// At a bad prime this counts the singular point as well.
    pub fn count_points(&self, q: u64) -> Result<u64, OracleError> {
        if !arith::is_prime(q) {
            return Err(OracleError::NotPrime(q));
        }
        let qi = q as i64;
        let r = |v: i64| v.rem_euclid(qi);
        let (a1, a2, a3, a4, a6) = (r(self.a1), r(self.a2), r(self.a3), r(self.a4), r(self.a6));
        let mut count = 1;
        for x in 0..qi {
            let rhs = r(r(r(r(x * x) * x) + r(a2 * r(x * x)) + r(a4 * x)) + a6);
            let lin = r(a1 * x + a3);
            for y in 0..qi {
                if r(y * y + lin * y) == rhs {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// `a_q = q + 1 - #E(F_q)` at a prime of good reduction.
    pub fn a_q(&self, q: u64) -> Result<i64, OracleError> {
        let disc = self.discriminant();
        if q != 0 && disc.unsigned_abs() % q == 0 {
            return Err(OracleError::BadReduction { q, disc });
        }
        let a = q as i64 + 1 - self.count_points(q)? as i64;
        if (a * a) as u64 > 4 * q {
            return Err(OracleError::HasseViolated { q, a });
        }
        Ok(a)
    }

    /// `q + 1 - #E(F_q)` at a bad prime, counting the singular point; zero
    /// for additive reduction.
    pub fn a_bad(&self, q: u64) -> Result<i64, OracleError> {
        Ok(q as i64 + 1 - self.count_points(q)? as i64)
    }
}

/// `a_m` for `1 <= m <= bound`: `a_1 = 1`, multiplicative, with
/// `a_{q^{r+1}} = a_q a_{q^r} - q a_{q^{r-1}}` at good primes and
/// `a_{q^r} = a_q^r` at bad primes, `a_q` from [`CurveSpec::a_bad`] there.
pub fn coefficients(curve: &CurveSpec, bound: u64) -> Result<Vec<i64>, OracleError> {
    let bad = curve.bad_primes();
    let mut a = vec![0i64; bound as usize + 1];
    if bound >= 1 {
        a[1] = 1;
    }
    let mut prime_powers: BTreeMap<u64, i64> = BTreeMap::new();
    for q in arith::primes_up_to(bound) {
        let is_bad = bad.contains(&q);
        let aq = if is_bad { curve.a_bad(q)? } else { curve.a_q(q)? };
        let (mut prev, mut cur, mut qr) = (1i64, aq, q);
        loop {
            prime_powers.insert(qr, cur);
            let Some(next) = qr.checked_mul(q).filter(|&n| n <= bound) else { break };
            let nxt = if is_bad { cur * aq } else { aq * cur - q as i64 * prev };
            (prev, cur, qr) = (cur, nxt, next);
        }
    }
    for m in 2..=bound {
        a[m as usize] = arith::factorize(m).iter().map(|&(q, e)| prime_powers[&q.pow(e)]).product();
    }
    Ok(a)
}

/// The newform `sum a_m q^m` truncated at `bound`, weight 2, at the curve's level tag.
pub fn coefficient_series(curve: &CurveSpec, bound: u64) -> Result<UniSeries, OracleError> {
    let a = coefficients(curve, bound)?;
    Ok(UniSeries::from_coeffs(
        curve.level,
        bound,
        2,
        a.iter().enumerate().skip(1).map(|(m, &c)| (m as u64, Rational::from_int(c))),
    )
    .expect("indices within 1..=bound"))
}
