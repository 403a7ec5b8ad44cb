use rand::Rng;
use serde::Serialize;

use super::{IntMatrix, ModGroupError, ModMatrix};
use crate::exactmath::arith;

/// An integer matrix of determinant 1 congruent to `diag(a^-1, a)` mod `N`.
///
/// With `w` the symmetric residue of `a`: `+-I` when `w = +-1`, otherwise
/// `[[x, (x w - 1)/N], [N, w]]` with `x` the symmetric residue of
/// `w^-1 mod N^2`.
pub fn lift_sigma(a: i64, n: u64) -> Result<IntMatrix, ModGroupError> {
    if n < 2 {
        return Err(ModGroupError::ModulusTooSmall(n));
    }
    if !arith::is_unit(a, n) {
        return Err(ModGroupError::NotAUnit { a, n });
    }
    let ni = n as i64;
    let w = arith::sym_mod(a, ni);
    if w == 1 || w == -1 {
        return Ok(IntMatrix::new(w, 0, 0, w));
    }
    let n2 = n * n;
    let x = arith::sym_mod(arith::mod_inv(w, n2).expect("unit mod N is a unit mod N^2") as i64, n2 as i64);
    let y = (x * w - 1) / ni;
    Ok(IntMatrix::new(x, y, ni, w))
}

/// Lifts an element of `SL2(Z/N)` to `SL2(Z)`.
///
/// The bottom row is `(c', d')` with `c'` the least nonnegative residue of
/// `c` (or `N` when `c = 0`) and `d'` the least `d + kN` prime to `c'`; the
/// top row is then the unique completion congruent to `(a, b)`, shifted into
/// the symmetric range.
pub fn lift_to_sl2z(m: &ModMatrix) -> Result<IntMatrix, ModGroupError> {
    let n = m.modulus();
    if m.det() != 1 % n {
        return Err(ModGroupError::NotInGroup(m.to_string()));
    }
    let ni = n as i64;
    let [a, b, c, d] = m.entries().map(|x| x as i64);
    let c1 = if c == 0 { ni } else { c };
    let mut d1 = d;
    while arith::gcd(c1, d1) != 1 {
        d1 += ni;
    }
    let (_, x, y) = arith::ext_gcd(d1, c1);
    let (u, v) = (x, -y);
    let s = arith::sym_mod(b * u - a * v, ni);
    Ok(IntMatrix::new(u + s * c1, v + s * d1, c1, d1))
}

/// One factor of a Hecke coset representative:
/// `sigma_a * [[a, b N], [0, d]]` with `a d = n`, `0 <= b < d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetRep {
    pub a: u64,
    pub b: u64,
    pub d: u64,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetPair {
    pub first: CosetRep,
    pub second: CosetRep,
}

impl CosetPair {
    pub fn matrices(&self) -> (IntMatrix, IntMatrix) {
        (self.first.matrix, self.second.matrix)
    }
}

/// Representatives for one factor, ordered by `a` ascending then `b`.
pub fn factor_reps(n_i: u64, n: u64) -> Result<Vec<CosetRep>, ModGroupError> {
    if n_i == 0 || !arith::is_unit(n_i as i64, n) {
        return Err(ModGroupError::BadDeterminant { det: n_i as i64, n });
    }
    let ni = n as i64;
    let mut out = Vec::with_capacity(arith::sigma1(n_i) as usize);
    for a in arith::divisors(n_i) {
        let d = n_i / a;
        let sigma = lift_sigma(a as i64, n)?;
        for b in 0..d {
            let upper = IntMatrix::new(a as i64, b as i64 * ni, 0, d as i64);
            out.push(CosetRep { a, b, d, matrix: sigma.mul(&upper) });
        }
    }
    Ok(out)
}

/// Left coset representatives of the determinant-`(n1, n2)` part of
/// `Delta_{eps,eps'}(N)`, indexed first-factor-major. The list does not
/// depend on `eps`; no congruence between `n1` and `n2` is imposed here.
pub fn hecke_cosets(n1: u64, n2: u64, n: u64) -> Result<Vec<CosetPair>, ModGroupError> {
    let r1 = factor_reps(n1, n)?;
    let r2 = factor_reps(n2, n)?;
    Ok(r1
        .iter()
        .flat_map(|f| r2.iter().map(move |s| CosetPair { first: f.clone(), second: s.clone() }))
        .collect())
}

fn cong(x: i64, y: i64, n: u64) -> bool {
    arith::modn(x - y, n) == 0
}

fn mulmod(e: i64, x: i64, n: u64) -> i64 {
    (arith::modn(e, n) as u128 * arith::modn(x, n) as u128 % n as u128) as i64
}

/// Membership in `Gamma_eps(N)`: both factors in `SL2(Z)` and
/// `g2 = theta_eps(g1) mod N`.
pub fn in_gamma_eps(g1: &IntMatrix, g2: &IntMatrix, eps: i64, n: u64) -> bool {
    g1.is_sl2() && g2.is_sl2() && in_delta(g1, g2, eps, eps, n)
}

/// Membership in `Delta_{eps,eps'}(N)`.
pub fn in_delta(d1: &IntMatrix, d2: &IntMatrix, eps: i64, eps2: i64, n: u64) -> bool {
    let (det1, det2) = (d1.det(), d2.det());
    det1 > 0
        && det2 > 0
        && arith::is_unit(det1, n)
        && arith::is_unit(det2, n)
        && cong(d1.a, d2.a, n)
        && cong(d1.b, mulmod(eps2, d2.b, n), n)
        && cong(mulmod(eps, d1.c, n), d2.c, n)
        && cong(mulmod(eps, d1.d, n), mulmod(eps2, d2.d, n), n)
}

/// Whether `x` lies in the left coset `Gamma_eps(N) y`.
pub fn same_coset(x: (&IntMatrix, &IntMatrix), y: (&IntMatrix, &IntMatrix), eps: i64, n: u64) -> bool {
    let quotient = |p: &IntMatrix, q: &IntMatrix| p.mul(&q.adjugate()).div_exact(q.det());
    match (quotient(x.0, y.0), quotient(x.1, y.1)) {
        (Some(g1), Some(g2)) => in_gamma_eps(&g1, &g2, eps, n),
        _ => false,
    }
}

/// Whether `x` and `y` lie in the same left `SL2(Z) x SL2(Z)` coset.
pub fn same_full_coset(x: (&IntMatrix, &IntMatrix), y: (&IntMatrix, &IntMatrix)) -> bool {
    let quotient = |p: &IntMatrix, q: &IntMatrix| p.mul(&q.adjugate()).div_exact(q.det());
    matches!(
        (quotient(x.0, y.0), quotient(x.1, y.1)),
        (Some(g1), Some(g2)) if g1.is_sl2() && g2.is_sl2()
    )
}

/// `g in SL2(Z)` with `g m = [[a, b], [0, d]]`, `a, d > 0`.
fn hermite(m: &IntMatrix) -> (IntMatrix, i64, i64, i64) {
    let det = m.det();
    debug_assert!(det > 0);
    let (g, alpha, beta) = arith::ext_gcd(m.a, m.c);
    let (g, alpha, beta) = if g < 0 { (-g, -alpha, -beta) } else { (g, alpha, beta) };
    let h = IntMatrix::new(alpha, beta, -m.c / g, m.a / g);
    let t = h.mul(m);
    debug_assert_eq!((t.a, t.c), (g, 0));
    (h, t.a, t.b, t.d)
}

/// Reduces one factor: `gamma in SL2(Z)` with `gamma m = sigma_a [[a, bN], [0, d]]`.
fn reduce_factor(m: &IntMatrix, n: u64) -> Result<(IntMatrix, u64, u64), ModGroupError> {
    let (h, a, b, d) = hermite(m);
    let ni = n as i64;
    let b1 = if d == 1 {
        0
    } else {
        let inv = arith::mod_inv(ni, d as u64).expect("d is prime to N") as i64;
        arith::modn(b * inv, d as u64) as i64
    };
    let x = (b1 * ni - b) / d;
    debug_assert_eq!(b + x * d, b1 * ni);
    let gamma = lift_sigma(a, n)?.mul(&IntMatrix::translation(x)).mul(&h);
    Ok((gamma, a as u64, b1 as u64))
}

/// The coset containing a pair, with the reducing element as witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetReduction {
    pub index: usize,
    /// `(g1, g2)` in `Gamma_eps(N)` with `(g1 delta1, g2 delta2)` equal to the representative.
    pub witness: (IntMatrix, IntMatrix),
}

/// Finds the representative `(sigma_{a1}[[a1, b1 N], [0, d1]], ...)` whose
/// `Gamma_eps(N)`-coset contains `delta`, following the constructive proof:
/// Hermite reduction of the first factor, a translation fixing `b1`, a
/// `theta_eps`-compatible second factor, and a final reduction of the second
/// factor by an element that is necessarily `1 mod N`.
pub fn reduce_to_coset(
    delta: (&IntMatrix, &IntMatrix),
    n1: u64,
    n2: u64,
    n: u64,
    eps: i64,
    eps2: i64,
) -> Result<CosetReduction, ModGroupError> {
    let (d1, d2) = delta;
    for (dm, ni) in [(d1, n1), (d2, n2)] {
        if dm.det() != ni as i64 {
            return Err(ModGroupError::BadDeterminant { det: dm.det(), n });
        }
    }
    if !in_delta(d1, d2, eps, eps2, n) {
        return Err(ModGroupError::NotInDelta { eps, eps2, n });
    }
    let (g1, a1, b1) = reduce_factor(d1, n)?;
    let g2 = lift_to_sl2z(&g1.reduce(n).theta(eps)?)?;
    let (g2r, a2, b2) = reduce_factor(&g2.mul(d2), n)?;
    let witness = (g1, g2r.mul(&g2));
    let r1 = factor_reps(n1, n)?;
    let r2 = factor_reps(n2, n)?;
    let i1 = r1.iter().position(|r| (r.a, r.b) == (a1, b1)).expect("reduced form is listed");
    let i2 = r2.iter().position(|r| (r.a, r.b) == (a2, b2)).expect("reduced form is listed");
    let ok = g2r.reduce(n).is_identity()
        && in_gamma_eps(&witness.0, &witness.1, eps, n)
        && witness.0.mul(d1) == r1[i1].matrix
        && witness.1.mul(d2) == r2[i2].matrix;
    if !ok {
        return Err(ModGroupError::NotInDelta { eps, eps2, n });
    }
    Ok(CosetReduction { index: i1 * r2.len() + i2, witness })
}

/// A random element of `Gamma_eps(N)`: a lifted random `g in SL2(Z/N)`
/// paired with the lift of `theta_eps(g)`, each multiplied by a short random
/// word in the principal congruence subgroup.
pub fn random_gamma_eps<R: Rng>(rng: &mut R, eps: i64, n: u64) -> Result<(IntMatrix, IntMatrix), ModGroupError> {
    let g = loop {
        let [a, b, c, d] = [(); 4].map(|_| rng.gen_range(0..n as i64));
        let m = ModMatrix::new(n, a, b, c, d);
        if m.det() == 1 % n {
            break m;
        }
    };
    let ni = n as i64;
    let word = |rng: &mut R| {
        (0..2).fold(IntMatrix::identity(), |acc, _| {
            let k = if rng.gen_bool(0.5) { ni } else { -ni };
            let letter = if rng.gen_bool(0.5) { IntMatrix::new(1, k, 0, 1) } else { IntMatrix::new(1, 0, k, 1) };
            acc.mul(&letter)
        })
    };
    let g1 = lift_to_sl2z(&g)?.mul(&word(rng));
    let g2 = lift_to_sl2z(&g.theta(eps)?)?.mul(&word(rng));
    Ok((g1, g2))
}
