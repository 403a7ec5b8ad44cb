use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{MathError, Rational};

/// A dense matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MathError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MathError::RaggedRows);
        }
        let n = rows.len();
        Ok(ExactMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, MathError> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Exact rank over `Q`.
    pub fn rank(&self) -> usize {
        rank_over_q(self)
    }
}

/// Clears denominators row by row; row scaling does not change the rank.
fn integer_rows(m: &ExactMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Rank over `Q` by Bareiss fraction-free elimination.
///
/// Every intermediate entry is a minor of the (denominator-cleared) input, so
/// the growth is bounded by Hadamard's inequality and every division is exact.
pub fn rank_over_q(m: &ExactMatrix) -> usize {
    let mut a = integer_rows(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_ranks() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::zeros(4, 2).rank(), 0);
        let m = ExactMatrix::from_i64_rows(&[&[1, 2], &[2, 4], &[1, 0]]).unwrap();
        assert_eq!(rank_over_q(&m), 2);
        assert_eq!(ExactMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn rational_entries() {
        let half = Rational::new(1, 2).unwrap();
        let m = ExactMatrix::from_rows(vec![
            vec![half.clone(), Rational::one()],
            vec![Rational::one(), Rational::from_int(2)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn ragged_rejected() {
        let err = ExactMatrix::from_i64_rows(&[&[1, 2], &[3]]).unwrap_err();
        assert!(matches!(err, MathError::RaggedRows));
    }

    /// Independent rank: Gaussian elimination over `Q` with plain rationals.
    fn gauss_rank(m: &ExactMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            for r in 0..a.len() {
                if r != rank && !a[r][c].is_zero() {
                    let f = &a[r][c] / &a[rank][c];
                    for k in 0..m.cols() {
                        let t = &f * &a[rank][k];
                        a[r][k] = &a[r][k] - &t;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<(i64, i64)>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec((-3i64..4, 1i64..4), c), r)
        })
    }

    fn build(raw: &[Vec<(i64, i64)>]) -> ExactMatrix {
        ExactMatrix::from_rows(
            raw.iter()
                .map(|r| r.iter().map(|&(n, d)| Rational::new(n, d).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    proptest! {
        #[test]
        fn agrees_with_gauss(raw in small_matrix()) {
            let m = build(&raw);
            prop_assert_eq!(rank_over_q(&m), gauss_rank(&m));
        }

        #[test]
        fn invariant_under_row_ops(raw in small_matrix(), seed in 0u64..1000) {
            let m = build(&raw);
            let mut rows: Vec<Vec<Rational>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
            let shift = (seed as usize) % rows.len();
            rows.rotate_left(shift);
            let k = Rational::new((seed % 7) as i64 + 1, (seed % 5) as i64 + 1).unwrap();
            let neg = -k.clone();
            for (i, row) in rows.iter_mut().enumerate() {
                let f = if i % 2 == 0 { &k } else { &neg };
                for x in row.iter_mut() {
                    *x = f * &*x;
                }
            }
            let scaled = ExactMatrix::from_rows(rows).unwrap();
            prop_assert_eq!(scaled.rank(), m.rank());
        }
    }
}
