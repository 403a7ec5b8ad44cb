//! Elementary number theory on machine integers.
//!
//! Everything here works on `i64`/`u64`: the moduli, levels and indices that
//! show up in this crate are small, while the values that can grow (series
//! coefficients, elimination pivots) go through [`Rational`](super::Rational)
//! and `BigInt`.

use super::MathError;

/// Non-negative gcd.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b) * b).abs()
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b) >= 0`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a as i128, b as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (old_r, old_s, old_t) = (-old_r, -old_s, -old_t);
    }
    (old_r as i64, old_s as i64, old_t as i64)
}

/// Least non-negative residue of `a` mod `n`.
pub fn modn(a: i64, n: u64) -> u64 {
    a.rem_euclid(n as i64) as u64
}

/// Residue of `a` mod `n` in the symmetric range `(-n/2, n/2]`.
pub fn sym_mod(a: i64, n: i64) -> i64 {
    let r = a.rem_euclid(n);
    if 2 * r > n {
        r - n
    } else {
        r
    }
}

/// Inverse of `a` modulo `n`, if it exists.
pub fn mod_inv(a: i64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(n as i64), n as i64);
    (g == 1).then(|| modn(x, n))
}

pub fn is_unit(a: i64, n: u64) -> bool {
    gcd(a, n as i64) == 1
}

/// Units of `Z/n` in increasing order.
pub fn units(n: u64) -> Vec<u64> {
    (0..n).filter(|&a| is_unit(a as i64, n)).collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; bound as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= bound as usize {
        if sieve[i] {
            for j in (i * i..=bound as usize).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &p)| p.then_some(i as u64))
        .collect()
}

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Positive divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Sum of divisors, which is also the number of index-`n` sublattices of `Z^2`.
pub fn sigma1(n: u64) -> u64 {
    divisors(n).into_iter().sum()
}

/// Legendre symbol `(a|p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u64) -> Result<i8, MathError> {
    if p < 3 || p % 2 == 0 || !is_prime(p) {
        return Err(MathError::NotOddPrime(p));
    }
    let r = modn(a, p);
    if r == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 })
}

pub fn pow_mod(base: u64, mut exp: u64, n: u64) -> u64 {
    let mut acc: u128 = 1 % n as u128;
    let mut b = (base % n) as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % n as u128;
        }
        b = b * b % n as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Nonzero squares mod `n`.
pub fn quadratic_residues(p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = (1..p).map(|x| x * x % p).collect();
    r.sort_unstable();
    r.dedup();
    r
}

/// Exact integer square root (floor).
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_small_cases() {
        assert_eq!(legendre(1, 7).unwrap(), 1);
        assert_eq!(legendre(2, 7).unwrap(), 1);
        assert_eq!(legendre(3, 7).unwrap(), -1);
        assert_eq!(legendre(14, 7).unwrap(), 0);
        assert_eq!(legendre(-1, 7).unwrap(), -1);
    }

    #[test]
    fn legendre_rejects_bad_moduli() {
        assert!(matches!(legendre(1, 2), Err(MathError::NotOddPrime(2))));
        assert!(matches!(legendre(1, 1), Err(MathError::NotOddPrime(1))));
        assert!(matches!(legendre(1, 9), Err(MathError::NotOddPrime(9))));
    }

    #[test]
    fn legendre_matches_square_table() {
        for p in [3u64, 5, 7, 11, 13, 23, 31] {
            let squares = quadratic_residues(p);
            for a in 0..p as i64 {
                let expect = if a == 0 {
                    0
                } else if squares.contains(&(a as u64)) {
                    1
                } else {
                    -1
                };
                assert_eq!(legendre(a, p).unwrap(), expect, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn ext_gcd_identity() {
        for a in -30i64..30 {
            for b in -30i64..30 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g, gcd(a, b));
            }
        }
    }

    #[test]
    fn divisor_helpers() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(sigma1(9), 13);
        assert_eq!(sigma1(2), 3);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(mod_inv(2, 7), Some(4));
        assert_eq!(mod_inv(2, 8), None);
        assert_eq!(units(8), vec![1, 3, 5, 7]);
        assert_eq!(isqrt(48), 6);
        assert_eq!(isqrt(49), 7);
    }

    #[test]
    fn sym_mod_range() {
        assert_eq!(sym_mod(25, 49), -24);
        assert_eq!(sym_mod(24, 49), 24);
        assert_eq!(sym_mod(-1, 7), -1);
        assert_eq!(sym_mod(4, 8), 4);
    }
}
