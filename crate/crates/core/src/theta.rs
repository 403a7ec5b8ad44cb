//! Hecke theta series attached to ideal classes of `Q(sqrt(-p))`, the
//! class forms `f_I`, and the product basis of the Hecke kernel.
//!
//! Series are stored at level `p` with `q = e^{2 pi i z / p}`: a lattice
//! point `mu` of `I` contributes `mu` to the coefficient of `q^{mu mu-bar / A}`.
//!
//! `f_I` sums the theta series over the classes `rho_a = a (a|p) alpha_I`,
//! `a` a unit mod `p`. For classes with `I` equivalent to its conjugate the
//! result has rational integer coefficients. For a conjugate pair
//! `(I, I-bar)` the two series are complex conjugates of each other with a
//! nonzero `sqrt(-p)` part, so [`f_i`] reports them as non-rational. The
//! rational kernel basis uses, for such a pair, the real part and the
//! `sqrt(-p)` part of `f_I`, which span the same space over `Q(sqrt(-p))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::classgroup::{self, ClassGroupError, IdealClassRep, QuadForm};
use crate::exactmath::{arith, rank_over_q, ExactMatrix, QuadElem};
use crate::qseries::{BiSeries, Coefficient, SeriesError, UniSeries};

#[derive(Debug, thiserror::Error)]
pub enum ThetaError {
    #[error(transparent)]
    ClassGroup(#[from] ClassGroupError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("coefficient {m} of f_I is {value}, which is not a rational integer")]
    NonRationalCoefficient { m: u64, value: QuadElem },
    #[error("{0} is not a prime p > 3")]
    BadPrime(u64),
}

/// A theta series `theta(z; rho, I, sqrt(-p))`, valid when `rho in I`.
#[derive(Clone, Debug, Serialize)]
pub struct ThetaSpec {
    ideal: IdealClassRep,
    rho: QuadElem,
}

impl ThetaSpec {
    pub fn new(ideal: IdealClassRep, rho: QuadElem) -> Result<Self, ThetaError> {
        ideal.coords(&rho)?;
        Ok(ThetaSpec { ideal, rho })
    }

    pub fn ideal(&self) -> &IdealClassRep {
        &self.ideal
    }

    pub fn rho(&self) -> &QuadElem {
        &self.rho
    }
}

fn quad(p: u64, u: i64, v: i64) -> QuadElem {
    QuadElem::new(p, u, v).expect("lattice points are integral")
}

/// `c_m = sum of mu over mu in I, mu = rho mod I sqrt(-p), mu mu-bar = m A`.
pub fn theta_coeffs(spec: &ThetaSpec, precision: u64) -> Result<UniSeries<QuadElem>, ThetaError> {
    let p = spec.ideal.p();
    let mut out = UniSeries::zero(p, precision, 2)?;
    for (m, mus) in classgroup::enumerate_by_norm(&spec.ideal, &spec.rho, precision)? {
        for mu in mus {
            out.add_at(m, &mu);
        }
    }
    Ok(out)
}

/// The residues `rho_a = a (a|p) alpha_I` for `a = 1..p-1`.
pub fn class_residues(ideal: &IdealClassRep) -> Vec<QuadElem> {
    let p = ideal.p();
    let alpha = ideal.alpha();
    (1..p)
        .map(|a| {
            let s = arith::legendre(a as i64, p).expect("p is an odd prime") as i64;
            alpha.scale(&BigInt::from(a as i64 * s))
        })
        .collect()
}

/// `f_I = sum_a theta(z; a (a|p) alpha_I, I, sqrt(-p))`, with its exact
/// coefficients in the ring of integers of `Q(sqrt(-p))`.
pub fn f_i_exact(ideal: &IdealClassRep, precision: u64) -> Result<UniSeries<QuadElem>, ThetaError> {
    let p = ideal.p();
    let residues = class_residues(ideal);
    let mut out = UniSeries::zero(p, precision, 2)?;
    for pt in classgroup::lattice_points(ideal, precision) {
        let mu = quad(p, pt.u, pt.v);
        let hits = residues.iter().filter(|rho| ideal.congruent(&mu, rho)).count() as i64;
        if hits > 0 {
            out.add_at(pt.m, &mu.scale(&BigInt::from(hits)));
        }
    }
    Ok(out)
}

/// `f_I` with rational coefficients, or the first coefficient that is not a
/// rational integer.
pub fn f_i(ideal: &IdealClassRep, precision: u64) -> Result<UniSeries, ThetaError> {
    let exact = f_i_exact(ideal, precision)?;
    if let Some((m, value)) = exact.iter().find(|(_, c)| !c.is_rational()) {
        return Err(ThetaError::NonRationalCoefficient { m, value: value.clone() });
    }
    Ok(exact.map_coeffs(|_, c| c.to_rational().expect("checked rational")))
}

/// Which part of `f_I` a rational class series holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassPart {
    /// `f_I` itself, already rational.
    Whole,
    /// `(f_I + f_I-bar)/2` for the first class of a conjugate pair.
    RealPart,
    /// The `sqrt(-p)` coefficient of `f_I` for the second class of a pair.
    SqrtPart,
}

/// One rational series per ideal class, spanning the same space over
/// `Q(sqrt(-p))` as the `f_I`.
#[derive(Clone, Debug, Serialize)]
pub struct ClassSeries {
    pub form: QuadForm,
    pub part: ClassPart,
    pub series: UniSeries,
}

pub fn class_series(p: u64, precision: u64) -> Result<Vec<ClassSeries>, ThetaError> {
    let classes = IdealClassRep::all(p)?;
    let mut out = Vec::with_capacity(classes.len());
    for ideal in &classes {
        let form = ideal.form();
        let conj = ideal.conjugate_form();
        let exact = f_i_exact(ideal, precision)?;
        let (part, series) = if conj == form {
            let s = exact.map_coeffs(|m, c| {
                c.to_rational().unwrap_or_else(|| panic!("self-conjugate class has irrational c_{m} = {c}"))
            });
            (ClassPart::Whole, s)
        } else if (form.a, form.b) < (conj.a, conj.b) {
            (ClassPart::RealPart, exact.map_coeffs(|_, c| c.real_part()))
        } else {
            (ClassPart::SqrtPart, exact.map_coeffs(|_, c| c.sqrt_part()))
        };
        out.push(ClassSeries { form, part, series });
    }
    Ok(out)
}

fn filtered_product<C: Coefficient>(
    f1: &UniSeries<C>,
    f2: &UniSeries<C>,
    p: u64,
) -> Result<BiSeries<C>, ThetaError> {
    let t = crate::qseries::tensor(f1, f2)?;
    let filtered = t.filter(|m1, m2| (m1 + p - m2 % p) % p == 0);
    Ok(filtered.with_component(-1)?)
}

/// The `h(-p)^2` series `sum_{m1 = m2 mod p} c_{I1,m1} c_{I2,m2} q1^m1 q2^m2`
/// built from the rational class series, in reduced-form order
/// (first class major), each tagged with component `-1`.
pub fn kernel_basis(p: u64, precision: u64) -> Result<Vec<BiSeries>, ThetaError> {
    let cs = class_series(p, precision)?;
    let mut out = Vec::with_capacity(cs.len() * cs.len());
    for a in &cs {
        for b in &cs {
            out.push(filtered_product(&a.series, &b.series, p)?);
        }
    }
    Ok(out)
}

/// The same products built literally from the `f_I`, with coefficients in
/// `Q(sqrt(-p))`.
pub fn kernel_basis_exact(p: u64, precision: u64) -> Result<Vec<BiSeries<QuadElem>>, ThetaError> {
    let fs = IdealClassRep::all(p)?
        .iter()
        .map(|i| f_i_exact(i, precision))
        .collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::with_capacity(fs.len() * fs.len());
    for a in &fs {
        for b in &fs {
            out.push(filtered_product(a, b, p)?);
        }
    }
    Ok(out)
}

/// Rank over `Q` of the coefficient vectors of `series`, all indices up to
/// the smallest precision.
pub fn coefficient_rank(series: &[BiSeries]) -> usize {
    let Some(m) = series.iter().map(BiSeries::precision).min() else {
        return 0;
    };
    let index: BTreeMap<(u64, u64), usize> = series
        .iter()
        .flat_map(|s| s.iter().map(|(k, _)| k))
        .filter(|&(a, b)| a <= m && b <= m)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let mut mat = ExactMatrix::zeros(series.len(), index.len());
    for (r, s) in series.iter().enumerate() {
        for (k, c) in s.iter() {
            if let Some(&col) = index.get(&k) {
                mat.set(r, col, c.clone());
            }
        }
    }
    rank_over_q(&mat)
}

fn check_prime(p: u64) -> Result<(), ThetaError> {
    if p > 3 && arith::is_prime(p) {
        Ok(())
    } else {
        Err(ThetaError::BadPrime(p))
    }
}

/// `h(-p)^2` for `p = 3 mod 4`, zero for `p = 1 mod 4`.
pub fn predicted_kernel_dim(p: u64) -> Result<u64, ThetaError> {
    check_prime(p)?;
    if p % 4 == 1 {
        return Ok(0);
    }
    let h = classgroup::class_number(p)? as u64;
    Ok(h * h)
}

/// `h(-p) (p - 1)/2` CM forms for `p = 3 mod 4`, none for `p = 1 mod 4`.
pub fn predicted_cm_count(p: u64) -> Result<u64, ThetaError> {
    check_prime(p)?;
    if p % 4 == 1 {
        return Ok(0);
    }
    Ok(classgroup::class_number(p)? as u64 * (p - 1) / 2)
}

/// Whether two series are rational multiples of each other on their common
/// coefficients.
pub fn proportional(a: &BiSeries, b: &BiSeries) -> bool {
    a.scalar_multiple_of(b).is_some() || b.scalar_multiple_of(a).is_some()
}
