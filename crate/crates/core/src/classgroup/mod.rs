//! Ideal classes of `Q(sqrt(-p))` for primes `p = 3 mod 4`, through reduced
//! binary quadratic forms of discriminant `-p`.
//!
//! Each reduced form `(a, b, c)` fixes the ideal `I = Z a + Z (b + sqrt(-p))/2`
//! of norm `a`, whose norm form `N(x a + y w)/a` is exactly
//! `a x^2 + b x y + c y^2`. In the half-integer encoding `(u + v sqrt(-p))/2`
//! the point with coordinates `(x, y)` is `u = 2 a x + b y`, `v = y`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::exactmath::{arith, QuadElem};

#[derive(Debug, thiserror::Error)]
pub enum ClassGroupError {
    #[error("{0} is not a prime p > 3 with p = 3 mod 4")]
    BadPrime(u64),
    #[error("({u} + {v} sqrt(-p))/2 is not in the ideal of norm {norm}")]
    NotInIdeal { u: String, v: String, norm: i64 },
    #[error("element lives in Q(sqrt(-{found})), expected Q(sqrt(-{expected}))")]
    FieldMismatch { expected: u64, found: u64 },
}

fn check_prime(p: u64) -> Result<(), ClassGroupError> {
    if p > 3 && p % 4 == 3 && arith::is_prime(p) {
        Ok(())
    } else {
        Err(ClassGroupError::BadPrime(p))
    }
}

/// A positive definite binary quadratic form `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `|b| <= a <= c`, `a > 0`, and `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        self.a > 0
            && self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// All reduced forms of discriminant `-p`, sorted by `(a, b)`.
pub fn reduced_forms(p: u64) -> Result<Vec<QuadForm>, ClassGroupError> {
    check_prime(p)?;
    let p = p as i64;
    let mut out = Vec::new();
    let mut a = 1;
    // a <= sqrt(p/3) for reduced forms
    while 3 * a * a <= p {
        for b in -a + 1..=a {
            let num = b * b + p;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm { a, b, c: num / (4 * a) };
            if f.is_reduced() {
                out.push(f);
            }
        }
        a += 1;
    }
    out.sort_by_key(|f| (f.a, f.b));
    Ok(out)
}

/// `h(-p)`, the number of reduced forms.
pub fn class_number(p: u64) -> Result<usize, ClassGroupError> {
    Ok(reduced_forms(p)?.len())
}

/// The ideal `Z a + Z (b + sqrt(-p))/2` attached to a reduced form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealClassRep {
    p: u64,
    form: QuadForm,
}

impl IdealClassRep {
    pub fn new(p: u64, form: QuadForm) -> Result<Self, ClassGroupError> {
        check_prime(p)?;
        if form.discriminant() != -(p as i64) || form.a <= 0 {
            return Err(ClassGroupError::BadPrime(p));
        }
        Ok(IdealClassRep { p, form })
    }

    /// One representative per class, in reduced-form order.
    pub fn all(p: u64) -> Result<Vec<Self>, ClassGroupError> {
        reduced_forms(p)?.into_iter().map(|f| IdealClassRep::new(p, f)).collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn form(&self) -> QuadForm {
        self.form
    }

    /// `A = N(I) = a`.
    pub fn norm(&self) -> u64 {
        self.form.a as u64
    }

    pub fn basis(&self) -> (QuadElem, QuadElem) {
        (self.point(1, 0), self.point(0, 1))
    }

    /// `x a + y (b + sqrt(-p))/2`.
    pub fn point(&self, x: i64, y: i64) -> QuadElem {
        let (u, v) = self.uv(x, y);
        QuadElem::new(self.p, u, v).expect("lattice points are integral")
    }

    fn uv(&self, x: i64, y: i64) -> (i64, i64) {
        (2 * self.form.a * x + self.form.b * y, y)
    }

    /// Coordinates in the basis, when `(u + v sqrt(-p))/2` lies in `I`.
    fn coords_uv(&self, u: i64, v: i64) -> Option<(i64, i64)> {
        let num = u - self.form.b * v;
        let den = 2 * self.form.a;
        (num % den == 0).then(|| (num / den, v))
    }

    /// Coordinates of `mu` in the basis, by solving the triangular 2x2 system.
    pub fn coords(&self, mu: &QuadElem) -> Result<(i64, i64), ClassGroupError> {
        if mu.p() != self.p {
            return Err(ClassGroupError::FieldMismatch { expected: self.p, found: mu.p() });
        }
        let not_in = || ClassGroupError::NotInIdeal { u: mu.u().to_string(), v: mu.v().to_string(), norm: self.form.a };
        let u = i64::try_from(mu.u()).map_err(|_| not_in())?;
        let v = i64::try_from(mu.v()).map_err(|_| not_in())?;
        self.coords_uv(u, v).ok_or_else(not_in)
    }

    pub fn contains(&self, mu: &QuadElem) -> bool {
        self.coords(mu).is_ok()
    }

    /// Membership of `(u + v sqrt(-p))/2` in `I sqrt(-p)`: its quotient by
    /// `sqrt(-p)` is `(v - (u/p) sqrt(-p))/2`.
    fn in_sqrt_multiple_uv(&self, u: i64, v: i64) -> bool {
        let p = self.p as i64;
        u % p == 0 && self.coords_uv(v, -u / p).is_some()
    }

    pub fn in_sqrt_multiple(&self, mu: &QuadElem) -> bool {
        match (i64::try_from(mu.u()), i64::try_from(mu.v())) {
            (Ok(u), Ok(v)) => mu.p() == self.p && self.in_sqrt_multiple_uv(u, v),
            _ => false,
        }
    }

    /// `mu = rho mod I sqrt(-p)`.
    pub fn congruent(&self, mu: &QuadElem, rho: &QuadElem) -> bool {
        mu.checked_sub(rho).map(|d| self.in_sqrt_multiple(&d)).unwrap_or(false)
    }

    /// `alpha_I`: the first basis vector when it avoids `I sqrt(-p)`, else the second.
    pub fn alpha(&self) -> QuadElem {
        let (w1, w2) = self.basis();
        if self.in_sqrt_multiple(&w1) {
            w2
        } else {
            w1
        }
    }

    /// The reduced form of the conjugate class: `(a, -b, c)`, or the form itself when ambiguous.
    pub fn conjugate_form(&self) -> QuadForm {
        let QuadForm { a, b, c } = self.form;
        if b.abs() == a || a == c {
            self.form
        } else {
            QuadForm { a, b: -b, c }
        }
    }
}

/// A lattice point of `I` with `mu mu-bar = m A`, in the half-integer encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct LatticePoint {
    pub m: u64,
    pub u: i64,
    pub v: i64,
}

/// All nonzero `mu in I` with `mu mu-bar <= bound * A`.
///
/// From `4 a Q(x, y) = (2 a x + b y)^2 + p y^2`: `|y| <= sqrt(4 a M / p)`, and
/// for each `y` the admissible `u = 2 a x + b y` satisfy `u^2 <= 4 a M - p y^2`.
pub(crate) fn lattice_points(ideal: &IdealClassRep, bound: u64) -> Vec<LatticePoint> {
    let QuadForm { a, b, .. } = ideal.form;
    let p = ideal.p as i64;
    let cap = 4 * a * bound as i64;
    let ymax = arith::isqrt((cap / p) as u64) as i64;
    let mut out = Vec::new();
    for y in -ymax..=ymax {
        let rest = cap - p * y * y;
        if rest < 0 {
            continue;
        }
        let r = arith::isqrt(rest as u64) as i64;
        let xlo = (-r - b * y).div_euclid(2 * a);
        let xhi = (r - b * y).div_euclid(2 * a);
        for x in xlo..=xhi {
            let q = ideal.form.eval(x, y);
            if q >= 1 && q <= bound as i64 {
                let (u, v) = ideal.uv(x, y);
                out.push(LatticePoint { m: q as u64, u, v });
            }
        }
    }
    out
}

/// For each `m <= bound`, every `mu in I` with `mu = rho mod I sqrt(-p)` and
/// `mu mu-bar = m A`. Norms without such points are absent.
pub fn enumerate_by_norm(
    ideal: &IdealClassRep,
    rho: &QuadElem,
    bound: u64,
) -> Result<BTreeMap<u64, Vec<QuadElem>>, ClassGroupError> {
    let (rx, ry) = ideal.coords(rho)?;
    let (ru, rv) = ideal.uv(rx, ry);
    let mut out: BTreeMap<u64, Vec<QuadElem>> = BTreeMap::new();
    for pt in lattice_points(ideal, bound) {
        if ideal.in_sqrt_multiple_uv(pt.u - ru, pt.v - rv) {
            let mu = QuadElem::new(ideal.p, pt.u, pt.v).expect("lattice points are integral");
            out.entry(pt.m).or_default().push(mu);
        }
    }
    Ok(out)
}
