//! Hecke and diamond operators on tuple forms, eigenvalue extraction and
//! the finite checks built on them: eigenform laws, Hecke kernel
//! membership, CM detection and the subgroup `H` of an eigenform lift.
//!
//! Operators act on the sum of components and the result is split back
//! into components, which realizes the relabeling
//! `(T f)_eps = T(f_{eps n2 / n1})` automatically.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::ecoracle::{self, CurveSpec, OracleError};
use crate::exactmath::{arith, rank_over_q, ExactMatrix, Rational};
use crate::qseries::{split_components, tensor, BiSeries, Character, SeriesError, TupleForm, UniSeries};

#[derive(Debug, thiserror::Error)]
pub enum HeckeError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{n} is not prime to the level {level}")]
    NotCoprime { n: u64, level: u64 },
    #[error("{eps} is not a unit mod {level}")]
    NotAUnit { eps: i64, level: u64 },
    #[error("T({n1},{n2}) on precision {precision} leaves no exact coefficients")]
    PrecisionExhausted { n1: u64, n2: u64, precision: u64 },
    #[error("bad twist table: {0}")]
    BadTwistTable(String),
    #[error("c_(1,1) = 0: the form cannot be normalized")]
    ZeroLeadingCoefficient,
    #[error("the coefficient matrix has rank {rank}, not a pure tensor")]
    NotPureTensor { rank: usize },
    #[error("the form is zero up to the precision")]
    ZeroForm,
}

/// A tuple form together with the scalars by which `sigma_a` acts on each
/// tensor factor: `f|(sigma_a, 1)` and `f|(1, sigma_a)` have total
/// expansion `first[a]` and `second[a]` times that of `f`.
#[derive(Clone, Debug)]
pub struct TwistSystem {
    base: TupleForm,
    first: BTreeMap<u64, Rational>,
    second: BTreeMap<u64, Rational>,
}

fn check_table(level: u64, table: &BTreeMap<u64, Rational>) -> Result<(), HeckeError> {
    let units = arith::units(level);
    if table.keys().copied().collect::<Vec<_>>() != units {
        return Err(HeckeError::BadTwistTable(format!("keys must be exactly the units mod {level}")));
    }
    for &a in &units {
        if table[&a].is_zero() {
            return Err(HeckeError::BadTwistTable(format!("zero scalar at {a}")));
        }
        for &b in &units {
            let ab = a * b % level;
            if table[&ab] != &table[&a] * &table[&b] {
                return Err(HeckeError::BadTwistTable(format!("not multiplicative at ({a}, {b})")));
            }
        }
    }
    Ok(())
}

impl TwistSystem {
    pub fn new(
        base: TupleForm,
        first: BTreeMap<u64, Rational>,
        second: BTreeMap<u64, Rational>,
    ) -> Result<Self, HeckeError> {
        check_table(base.level(), &first)?;
        check_table(base.level(), &second)?;
        Ok(TwistSystem { base, first, second })
    }

    /// Both factors invariant under every `sigma_a`.
    pub fn trivial(base: TupleForm) -> Self {
        let table: BTreeMap<u64, Rational> = arith::units(base.level()).into_iter().map(|a| (a, Rational::one())).collect();
        TwistSystem { base, first: table.clone(), second: table }
    }

    /// Factors twisted by characters, acted on by `chi(a)^2`.
    pub fn from_characters(base: TupleForm, chi1: &Character, chi2: &Character) -> Result<Self, HeckeError> {
        let table = |chi: &Character| {
            arith::units(base.level())
                .into_iter()
                .map(|a| (a, Rational::from_int(chi.eval(a) as i64 * chi.eval(a) as i64)))
                .collect()
        };
        let (t1, t2) = (table(chi1), table(chi2));
        Self::new(base, t1, t2)
    }

    pub fn base(&self) -> &TupleForm {
        &self.base
    }

    /// Same scalar tables over a new base form.
    pub fn with_base(&self, base: TupleForm) -> Self {
        TwistSystem { base, first: self.first.clone(), second: self.second.clone() }
    }

    pub fn first_scalar(&self, a: u64) -> &Rational {
        &self.first[&(a % self.base.level())]
    }

    pub fn second_scalar(&self, a: u64) -> &Rational {
        &self.second[&(a % self.base.level())]
    }
}

/// `T(n1, n2)`: on the total expansion,
/// `d_{m1,m2} = sum_{a_i | (m_i, n_i)} a1^{k1-1} a2^{k2-1} s(a1/a2) c_{m1 n1/a1^2, m2 n2/a2^2}`
/// with `s` the first-factor twist table. Precision drops to `M / max(n1, n2)`.
pub fn apply_t(f: &TwistSystem, n1: u64, n2: u64) -> Result<TupleForm, HeckeError> {
    let base = &f.base;
    let level = base.level();
    for n in [n1, n2] {
        if n == 0 || !arith::is_unit(n as i64, level) {
            return Err(HeckeError::NotCoprime { n, level });
        }
    }
    let precision = base.precision() / n1.max(n2);
    if precision == 0 {
        return Err(HeckeError::PrecisionExhausted { n1, n2, precision: base.precision() });
    }
    let (k1, k2) = base.weight();
    let sigma = base.sum();
    let mut coeffs = Vec::new();
    for m1 in 1..=precision {
        let div1 = arith::divisors(arith::gcd(m1 as i64, n1 as i64) as u64);
        for m2 in 1..=precision {
            let div2 = arith::divisors(arith::gcd(m2 as i64, n2 as i64) as u64);
            let mut d = Rational::zero();
            for &a1 in &div1 {
                for &a2 in &div2 {
                    let c = sigma.value(m1 * n1 / (a1 * a1), m2 * n2 / (a2 * a2));
                    if c.is_zero() {
                        continue;
                    }
                    let ratio = a1 * arith::mod_inv(a2 as i64, level).expect("a2 divides n2, a unit") % level;
                    let w = Rational::from_int(a1).pow(k1 as i32 - 1) * Rational::from_int(a2).pow(k2 as i32 - 1);
                    d += &(&(&w * f.first_scalar(ratio)) * &c);
                }
            }
            if !d.is_zero() {
                coeffs.push(((m1, m2), d));
            }
        }
    }
    let total = BiSeries::from_coeffs(level, precision, (k1, k2), None, coeffs)?;
    Ok(split_components(&total)?)
}

/// `<a> f`, the action of `(1, sigma_a)`. It carries the form on component
/// `a^2 eps` to component `eps`; on expansions it multiplies by the
/// second-factor scalar of `a`.
pub fn diamond(f: &TwistSystem, a: i64) -> Result<TupleForm, HeckeError> {
    let level = f.base.level();
    if !arith::is_unit(a, level) {
        return Err(HeckeError::NotAUnit { eps: a, level });
    }
    let s = f.second_scalar(arith::modn(a, level)).clone();
    Ok(f.base.scale(&s))
}

/// Normalized eigenvalues `lambda(n1, n2) = c_{n1,n2} / c_{1,1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenData {
    pub level: u64,
    pub precision: u64,
    pub lambda: BTreeMap<(u64, u64), Rational>,
}

impl EigenData {
    /// `lambda(n1, n2)`, zero when absent; `None` outside the precision or
    /// for indices sharing a factor with the level.
    pub fn get(&self, n1: u64, n2: u64) -> Option<Rational> {
        let unit = |n: u64| arith::is_unit(n as i64, self.level);
        (n1 <= self.precision && n2 <= self.precision && unit(n1) && unit(n2))
            .then(|| self.lambda.get(&(n1, n2)).cloned().unwrap_or_else(Rational::zero))
    }
}

impl Serialize for EigenData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let lambda: Vec<(u64, u64, &Rational)> = self.lambda.iter().map(|(&(a, b), r)| (a, b, r)).collect();
        let mut st = s.serialize_struct("EigenData", 3)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("precision", &self.precision)?;
        st.serialize_field("lambda", &lambda)?;
        st.end()
    }
}

pub fn eigen_extract(f: &TupleForm) -> Result<EigenData, HeckeError> {
    let c11 = f.coefficient(1, 1);
    if c11.is_zero() {
        return Err(HeckeError::ZeroLeadingCoefficient);
    }
    let mut lambda = BTreeMap::new();
    for (_, comp) in f.components() {
        for ((n1, n2), c) in comp.iter() {
            lambda.insert((n1, n2), c.checked_div(&c11).expect("nonzero"));
        }
    }
    Ok(EigenData { level: f.level(), precision: f.precision(), lambda })
}

/// A failed eigenform law, with the indices involved.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawFailure {
    pub factor: u8,
    pub law: &'static str,
    pub indices: Vec<u64>,
}

/// Everything [`verify_eigenform`] checked.
#[derive(Clone, Debug, Serialize)]
pub struct EigenCertificate {
    pub holds: bool,
    pub precision: u64,
    /// Coprime pairs `(m, n)` with `a_{mn} = a_m a_n` checked, per factor.
    pub multiplicative_pairs: usize,
    /// `(q, r)` with `a_{q^{r+1}} = a_q a_{q^r} - chi(q) q^{k-1} a_{q^{r-1}}` checked.
    pub recursions: Vec<(u64, u32)>,
    pub primes: Vec<u64>,
    pub failures: Vec<LawFailure>,
}

/// The two normalized factor sequences of a rank-one total expansion.
pub fn tensor_factors(f: &TupleForm) -> Result<(Vec<Rational>, Vec<Rational>), HeckeError> {
    let sigma = f.sum();
    let m = f.precision();
    let mut mat = ExactMatrix::zeros(m as usize, m as usize);
    for ((m1, m2), c) in sigma.iter() {
        mat.set(m1 as usize - 1, m2 as usize - 1, c.clone());
    }
    match rank_over_q(&mat) {
        0 => return Err(HeckeError::ZeroForm),
        1 => {}
        rank => return Err(HeckeError::NotPureTensor { rank }),
    }
    let ((i, j), _) = sigma.iter().next().expect("rank one");
    let row: Vec<Rational> = (0..=m).map(|k| if k == 0 { Rational::zero() } else { sigma.value(k, j) }).collect();
    let col: Vec<Rational> = (0..=m).map(|k| if k == 0 { Rational::zero() } else { sigma.value(i, k) }).collect();
    let normalize = |v: Vec<Rational>| {
        let lead = v[1].clone();
        if lead.is_zero() {
            v
        } else {
            v.iter().map(|x| x.checked_div(&lead).expect("nonzero")).collect()
        }
    };
    Ok((normalize(row), normalize(col)))
}

/// Checks that the total expansion is `c * f1 (x) f2` with both `f_i`
/// normalized Hecke eigenforms up to the precision: `a_1 = 1`,
/// multiplicativity on coprime indices, and the prime-power recursion at
/// every prime `q` not dividing the level, with character `chi`.
pub fn verify_eigenform(f: &TupleForm, chi: &Character) -> Result<EigenCertificate, HeckeError> {
    let level = f.level();
    let m = f.precision();
    let (f1, f2) = tensor_factors(f)?;
    let (k1, k2) = f.weight();
    let primes: Vec<u64> = arith::primes_up_to(m).into_iter().filter(|q| level % q != 0).collect();
    let mut cert = EigenCertificate {
        holds: true,
        precision: m,
        multiplicative_pairs: 0,
        recursions: Vec::new(),
        primes: primes.clone(),
        failures: Vec::new(),
    };
    for (tag, seq, k) in [(1u8, &f1, k1), (2u8, &f2, k2)] {
        if seq[1] != Rational::one() {
            cert.failures.push(LawFailure { factor: tag, law: "a_1 = 1", indices: vec![1] });
            continue;
        }
        for a in 2..=m {
            for b in a + 1..=m / a {
                if arith::gcd(a as i64, b as i64) == 1 {
                    if tag == 1 {
                        cert.multiplicative_pairs += 1;
                    }
                    if seq[(a * b) as usize] != &seq[a as usize] * &seq[b as usize] {
                        cert.failures.push(LawFailure { factor: tag, law: "multiplicative", indices: vec![a, b] });
                    }
                }
            }
        }
        for &q in &primes {
            let weight = Rational::from_int(chi.eval(q) as i64) * Rational::from_int(q).pow(k as i32 - 1);
            let mut r = 1u32;
            while q.pow(r + 1) <= m {
                let lhs = &seq[q.pow(r + 1) as usize];
                let rhs = &(&seq[q as usize] * &seq[q.pow(r) as usize]) - &(&weight * &seq[q.pow(r - 1) as usize]);
                if tag == 1 {
                    cert.recursions.push((q, r));
                }
                if *lhs != rhs {
                    cert.failures.push(LawFailure { factor: tag, law: "prime-power recursion", indices: vec![q, r as u64] });
                }
                r += 1;
            }
        }
    }
    cert.holds = cert.failures.is_empty();
    Ok(cert)
}

/// A nonzero coefficient violating the kernel condition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MembershipWitness {
    pub n: (u64, u64),
    pub m: (u64, u64),
    pub value: Rational,
}

/// Result of a finite kernel-membership scan; `holds` means "up to `precision`".
#[derive(Clone, Debug, Serialize)]
pub struct MembershipVerdict {
    pub holds: bool,
    pub eps: u64,
    pub precision: u64,
    pub tuples_checked: usize,
    pub witness: Option<MembershipWitness>,
}

/// Scans `c_{n1 m1, n2 m2}(f) = 0` over all `n_i` prime to `N`, `n_i m_i <= M`,
/// with `eps n1 + n2 = 0`, `n1 m1 = n2 m2 (mod N)` and `gcd(n_i, m_i) = 1`.
/// `f` is the form on component `-1`.
pub fn kernel_membership(f: &BiSeries, eps: i64) -> Result<MembershipVerdict, HeckeError> {
    let level = f.level();
    if !arith::is_unit(eps, level) {
        return Err(HeckeError::NotAUnit { eps, level });
    }
    let e = arith::modn(eps, level);
    let m = f.precision();
    let mut verdict = MembershipVerdict { holds: true, eps: e, precision: m, tuples_checked: 0, witness: None };
    for n1 in (1..=m).filter(|&n| arith::is_unit(n as i64, level)) {
        for n2 in (1..=m).filter(|&n| arith::is_unit(n as i64, level)) {
            if (e * n1 + n2) % level != 0 {
                continue;
            }
            for m1 in (1..=m / n1).filter(|&x| arith::gcd(x as i64, n1 as i64) == 1) {
                for m2 in (1..=m / n2).filter(|&x| arith::gcd(x as i64, n2 as i64) == 1) {
                    if (n1 * m1 + level - n2 * m2 % level) % level != 0 {
                        continue;
                    }
                    verdict.tuples_checked += 1;
                    let c = f.value(n1 * m1, n2 * m2);
                    if !c.is_zero() {
                        verdict.holds = false;
                        verdict.witness = Some(MembershipWitness { n: (n1, n2), m: (m1, m2), value: c });
                        return Ok(verdict);
                    }
                }
            }
        }
    }
    Ok(verdict)
}

/// [`kernel_membership`] on the `-1` component of a tuple.
pub fn kernel_membership_tuple(f: &TupleForm, eps: i64) -> Result<MembershipVerdict, HeckeError> {
    kernel_membership(f.component(-1).expect("every unit has a component"), eps)
}

/// Result of CM detection; the character is claimed only up to `precision`.
#[derive(Clone, Debug, Serialize)]
pub struct CmVerdict {
    pub character: Option<Character>,
    pub precision: u64,
    /// First index prime to `p` outside the character's kernel.
    pub witness: Option<u64>,
}

/// The quadratic character mod `p` when every coefficient index prime to
/// `p` lies in its kernel.
pub fn cm_detect(f: &UniSeries, p: u64) -> Result<CmVerdict, HeckeError> {
    let chi = Character::quadratic(p)?;
    let witness = f.support().find(|&m| chi.eval(m) == -1);
    Ok(CmVerdict { character: witness.is_none().then_some(chi), precision: f.precision(), witness })
}

/// `H = { eps : component -eps is nonzero }` with its structural checks.
#[derive(Clone, Debug, Serialize)]
pub struct HSubgroup {
    pub level: u64,
    pub elements: Vec<u64>,
    pub closed: bool,
    /// Every element of `(Z/N)^x / H` has order at most two.
    pub quotient_exponent_two: bool,
    pub index: usize,
}

impl HSubgroup {
    pub fn is_valid(&self) -> bool {
        self.closed && self.quotient_exponent_two
    }
}

pub fn h_subgroup(f: &TupleForm) -> HSubgroup {
    let level = f.level();
    let nonzero: BTreeSet<u64> = f.nonzero_components().into_iter().collect();
    let elements: Vec<u64> =
        arith::units(level).into_iter().filter(|&e| nonzero.contains(&arith::modn(-(e as i64), level))).collect();
    let set: BTreeSet<u64> = elements.iter().copied().collect();
    let closed = set.contains(&(1 % level))
        && elements.iter().all(|&a| elements.iter().all(|&b| set.contains(&(a * b % level))));
    let quotient_exponent_two = arith::units(level).iter().all(|&a| set.contains(&(a * a % level)));
    let units = arith::units(level).len();
    let index = if elements.is_empty() { 0 } else { units / elements.len() };
    HSubgroup { level, elements, closed, quotient_exponent_two, index }
}

/// The tuple whose total expansion is `f1 (x) f2` on indices prime to the level.
pub fn tensor_lift(f1: &UniSeries, f2: &UniSeries) -> Result<TupleForm, HeckeError> {
    Ok(split_components(&tensor(f1, f2)?)?)
}

/// The lift of the conductor-49 newform squared to every component at level 7.
pub fn g7_lift(precision: u64) -> Result<TupleForm, HeckeError> {
    let f = ecoracle::coefficient_series(&CurveSpec::conductor_49(), precision)?;
    tensor_lift(&f, &f)
}

/// `g(7)`: the `-1` component of [`g7_lift`],
/// `sum_{m1 = m2 mod 7} a_{m1} a_{m2} q1^m1 q2^m2` on indices prime to 7.
pub fn g7(precision: u64) -> Result<BiSeries, HeckeError> {
    Ok(g7_lift(precision)?.component(-1).expect("unit component").clone())
}
