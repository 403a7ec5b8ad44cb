use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::report::{RunReport, Status};
use crate::classgroup::{self, IdealClassRep};
use crate::ecoracle::{self, CurveSpec, OracleError};
use crate::exactmath::{arith, Rational};
use crate::hecke::{self, HeckeError, TwistSystem};
use crate::modgroup::{self, IntMatrix};
use crate::qseries::{BiSeries, Character, TupleForm};
use crate::theta;

fn valid_prime(r: &mut RunReport, p: u64) -> bool {
    let ok = p > 3 && arith::is_prime(p);
    if !ok {
        r.fail("input", format!("p = {p} is not a prime greater than 3"));
    }
    ok
}

fn cm_prime(r: &mut RunReport, p: u64) -> bool {
    if !valid_prime(r, p) {
        return false;
    }
    if p % 4 == 1 {
        r.pass("discriminant", format!("p = {p} = 1 mod 4: -{p} is not a field discriminant, no CM theta series"));
        return false;
    }
    true
}

/// First index off the line `eps m1 + m2 = 0 (mod N)`.
fn off_line(f: &BiSeries, eps: i64) -> Option<(u64, u64)> {
    let n = f.level() as i64;
    f.iter().map(|(k, _)| k).find(|&(m1, m2)| (eps * m1 as i64 + m2 as i64).rem_euclid(n) != 0)
}

fn non_residue_eps(p: u64) -> Vec<u64> {
    arith::units(p).into_iter().filter(|&e| arith::legendre(-(e as i64), p).expect("p odd prime") == -1).collect()
}

fn class_checks(r: &mut RunReport, p: u64) {
    match classgroup::reduced_forms(p) {
        Ok(forms) => {
            let list: Vec<String> = forms.iter().map(|f| f.to_string()).collect();
            r.pass("class-number", format!("h(-{p}) = {}: {}", forms.len(), list.join(" ")));
            r.check("class-number-odd", forms.len() % 2 == 1, format!("h(-{p}) = {}", forms.len()));
        }
        Err(e) => r.error("class-number", e),
    }
}

fn theta_checks(r: &mut RunReport, p: u64, precision: u64) {
    let ideals = match IdealClassRep::all(p) {
        Ok(i) => i,
        Err(e) => return r.error("theta", e),
    };
    let chi = Character::quadratic(p).expect("odd prime");
    for ideal in &ideals {
        let form = ideal.form();
        let exact = match theta::f_i_exact(ideal, precision) {
            Ok(f) => f,
            Err(e) => {
                r.error(format!("theta {form}"), e);
                continue;
            }
        };
        let self_conj = ideal.conjugate_form() == form;
        let irrational = exact.iter().find(|(_, c)| !c.is_rational());
        let witness = match &irrational {
            None => "all coefficients rational".to_string(),
            Some((m, c)) => format!("c_{m} = {c}"),
        };
        r.check(
            format!("theta-rationality {form}"),
            self_conj == irrational.is_none(),
            format!("{} class; {witness}", if self_conj { "self-conjugate" } else { "conjugate-pair" }),
        );
        let bad = exact.support().find(|&m| m % p != 0 && chi.eval(m) != 1);
        match bad {
            None => r.pass(format!("cm-support {form}"), format!("support prime to {p} is in the residues, m <= {precision}")),
            Some(m) => r.fail(format!("cm-support {form}"), format!("c_{m} != 0 with ({m}|{p}) = -1")),
        }
    }
}

fn cross_validation(r: &mut RunReport, precision: u64) {
    let name = "theta-vs-curve";
    let principal = match IdealClassRep::all(7) {
        Ok(mut v) => v.remove(0),
        Err(e) => return r.error(name, e),
    };
    let (f, e) = match (theta::f_i(&principal, precision), ecoracle::coefficient_series(&CurveSpec::conductor_49(), precision)) {
        (Ok(f), Ok(e)) => (f.restrict_coprime(), e.restrict_coprime()),
        (Err(err), _) => return r.error(name, err),
        (_, Err(err)) => return r.error(name, err),
    };
    let scalar = f.value(1).checked_div(&e.value(1)).ok().filter(|s| !s.is_zero());
    let Some(scalar) = scalar else {
        return r.fail(name, format!("c_1(f_I) = {}, a_1 = {}", f.value(1), e.value(1)));
    };
    match (1..=precision).filter(|m| m % 7 != 0).find(|&m| f.value(m) != &scalar * &e.value(m)) {
        None => r.pass(name, format!("f_I = {scalar} * f_49a on all m <= {precision} prime to 7")),
        Some(m) => r.fail(name, format!("c_{m}(f_I) = {}, {scalar} * a_{m} = {}", f.value(m), &scalar * &e.value(m))),
    }
}

fn kernel_checks(r: &mut RunReport, p: u64, precision: u64) -> Option<Vec<BiSeries>> {
    let basis = match theta::kernel_basis(p, precision) {
        Ok(b) => b,
        Err(e) => {
            r.error("kernel-rank", e);
            return None;
        }
    };
    let rank = theta::coefficient_rank(&basis);
    let predicted = theta::predicted_kernel_dim(p).expect("valid prime");
    r.check("kernel-rank", rank as u64 == predicted, format!("rank {rank}, h(-{p})^2 = {predicted}"));
    let mut clash = None;
    'outer: for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if theta::proportional(&basis[i], &basis[j]) {
                clash = Some((i, j));
                break 'outer;
            }
        }
    }
    match clash {
        None => r.pass("kernel-distinct", format!("{} pairwise non-proportional elements", basis.len())),
        Some((i, j)) => r.fail("kernel-distinct", format!("elements {i} and {j} are proportional")),
    }
    Some(basis)
}

fn vanishing_checks(r: &mut RunReport, p: u64, precision: u64, basis: &[BiSeries]) {
    let mut checked = 0;
    for (i, b) in basis.iter().enumerate() {
        checked += 1;
        if let Some((m1, m2)) = off_line(b, -1) {
            return r.fail("vanishing", format!("kernel element {i}: c_({m1},{m2}) != 0 off the eps = -1 line"));
        }
    }
    let cs = match theta::class_series(p, precision) {
        Ok(c) => c,
        Err(e) => return r.error("vanishing", e),
    };
    for a in &cs {
        for b in &cs {
            let lift = match hecke::tensor_lift(&a.series, &b.series) {
                Ok(l) => l,
                Err(e) => return r.error("vanishing", e),
            };
            for (eps, comp) in lift.components() {
                checked += 1;
                if let Some((m1, m2)) = off_line(comp, eps as i64) {
                    return r.fail(
                        "vanishing",
                        format!("lift of {} x {}, component {eps}: c_({m1},{m2}) != 0", a.form, b.form),
                    );
                }
            }
        }
    }
    r.pass("vanishing", format!("{checked} component forms supported on their lines, M = {precision}"));
}

fn membership_verdict(r: &mut RunReport, name: String, f: &BiSeries, eps: i64, predicted: bool) {
    match hecke::kernel_membership(f, eps) {
        Err(e) => r.error(name, e),
        Ok(v) => {
            let detail = match &v.witness {
                None => format!("{} tuples vanish, M = {}", v.tuples_checked, v.precision),
                Some(w) => format!("c at n = {:?}, m = {:?} is {}", w.n, w.m, w.value),
            };
            let status = match (v.holds, predicted) {
                (true, true) | (false, false) => Status::Pass,
                (false, true) => Status::Fail,
                (true, false) => Status::PrecisionLimited,
            };
            let status = if v.holds && v.tuples_checked == 0 { Status::PrecisionLimited } else { status };
            r.push(name, status, detail);
        }
    }
}

fn membership_checks(r: &mut RunReport, p: u64, basis: &[BiSeries], eps: Option<i64>) {
    let targets: Vec<i64> = match eps {
        Some(e) => vec![e],
        None => non_residue_eps(p).into_iter().map(|e| e as i64).collect(),
    };
    for &e in &targets {
        let predicted = arith::legendre(-e, p).ok() == Some(-1);
        for (i, b) in basis.iter().enumerate() {
            membership_verdict(r, format!("kernel-membership element {i} eps={e}"), b, e, predicted);
        }
    }
    if p == 7 {
        if let Ok(g) = hecke::g7(basis.first().map_or(60, BiSeries::precision)) {
            for &e in &targets {
                let predicted = arith::legendre(-e, 7).ok() == Some(-1);
                membership_verdict(r, format!("kernel-membership g(7) eps={e}"), &g, e, predicted);
            }
        }
    }
}

fn eigen_checks(r: &mut RunReport, precision: u64, basis: &[BiSeries]) {
    let lift = match hecke::g7_lift(precision) {
        Ok(l) => l,
        Err(e) => return r.error("eigenform", e),
    };
    match hecke::verify_eigenform(&lift, &Character::trivial(7)) {
        Err(e) => r.error("eigenform", e),
        Ok(cert) => {
            let detail = match cert.failures.first() {
                None => format!(
                    "{} coprime pairs, {} prime-power steps, M = {}",
                    cert.multiplicative_pairs,
                    cert.recursions.len(),
                    cert.precision
                ),
                Some(f) => format!("factor {}: {} fails at {:?}", f.factor, f.law, f.indices),
            };
            r.check("eigenform", cert.holds, detail);
        }
    }
    match hecke::eigen_extract(&lift).map(|e| e.get(2, 9)) {
        Ok(Some(l)) => r.check("lambda(2,9)", l == Rational::from_int(-3), format!("lambda(2,9) = {l}")),
        Ok(None) => r.push("lambda(2,9)", Status::PrecisionLimited, format!("M = {precision} < 9")),
        Err(e) => r.error("lambda(2,9)", e),
    }
    let g = lift.component(-1).expect("unit component");
    match basis.first().and_then(|b| b.scalar_multiple_of(g)) {
        Some(c) => r.pass("kernel-generator", format!("kernel element = {c} * g(7)")),
        None => r.fail("kernel-generator", "kernel element is not a multiple of g(7)"),
    }
}

fn hsub_verdict(r: &mut RunReport, name: String, lift: &TupleForm, expected: &[u64]) {
    let h = hecke::h_subgroup(lift);
    let detail = format!(
        "H = {:?}, closed = {}, quotient exponent <= 2: {}",
        h.elements, h.closed, h.quotient_exponent_two
    );
    let status = if h.elements == expected && h.is_valid() {
        Status::Pass
    } else if !h.closed && !h.elements.is_empty() {
        // missing components at low precision look like a non-subgroup
        Status::PrecisionLimited
    } else {
        Status::Fail
    };
    r.push(name, status, detail);
}

fn hsub_checks(r: &mut RunReport, p: u64, precision: u64) {
    let squares = arith::quadratic_residues(p);
    if p == 7 {
        match hecke::g7_lift(precision) {
            Ok(l) => hsub_verdict(r, "h-subgroup g(7)".to_string(), &l, &squares),
            Err(e) => r.error("h-subgroup g(7)", e),
        }
    }
    let cs = match theta::class_series(p, precision) {
        Ok(c) => c,
        Err(e) => return r.error("h-subgroup", e),
    };
    for a in &cs {
        for b in &cs {
            match hecke::tensor_lift(&a.series, &b.series) {
                Ok(l) => hsub_verdict(r, format!("h-subgroup {} x {}", a.form, b.form), &l, &squares),
                Err(e) => r.error("h-subgroup", e),
            }
        }
    }
}

/// Class group, theta rationality, kernel rank, vanishing, kernel
/// membership, eigenform laws at `p = 7`, and the subgroup `H`.
pub fn cmd_verify(p: u64, precision: u64) -> RunReport {
    let mut r = RunReport::new("verify", [("p", json!(p)), ("prec", json!(precision))]);
    if !cm_prime(&mut r, p) {
        if p > 3 && arith::is_prime(p) {
            let predicted = theta::predicted_kernel_dim(p).expect("valid prime");
            r.check("kernel-rank", predicted == 0, format!("rank 0, predicted {predicted}"));
        }
        return r;
    }
    class_checks(&mut r, p);
    theta_checks(&mut r, p, precision);
    if p == 7 {
        cross_validation(&mut r, precision);
    }
    let Some(basis) = kernel_checks(&mut r, p, precision) else {
        return r;
    };
    vanishing_checks(&mut r, p, precision, &basis);
    membership_checks(&mut r, p, &basis, None);
    if p == 7 {
        eigen_checks(&mut r, precision, &basis);
    }
    hsub_checks(&mut r, p, precision);
    r
}

pub fn cmd_classgroup(p: u64) -> RunReport {
    let mut r = RunReport::new("classgroup", [("p", json!(p))]);
    if cm_prime(&mut r, p) {
        class_checks(&mut r, p);
        match IdealClassRep::all(p) {
            Ok(ideals) => {
                for i in ideals {
                    let (w1, w2) = i.basis();
                    r.pass(format!("ideal {}", i.form()), format!("basis ({w1}, {w2}), conjugate {}", i.conjugate_form()));
                }
            }
            Err(e) => r.error("ideals", e),
        }
    }
    r
}

pub fn cmd_theta(p: u64, precision: u64) -> RunReport {
    let mut r = RunReport::new("theta", [("p", json!(p)), ("prec", json!(precision))]);
    if cm_prime(&mut r, p) {
        theta_checks(&mut r, p, precision);
        if p == 7 {
            cross_validation(&mut r, precision);
        }
    }
    r
}

pub fn cmd_kernel(p: u64, precision: u64) -> RunReport {
    let mut r = RunReport::new("kernel", [("p", json!(p)), ("prec", json!(precision))]);
    if !cm_prime(&mut r, p) {
        return r;
    }
    if let Some(basis) = kernel_checks(&mut r, p, precision) {
        vanishing_checks(&mut r, p, precision, &basis);
    }
    r
}

/// `T(n1, n2)` on the lift of `g(7)`: coset count and eigenvalue.
pub fn cmd_hecke(n1: u64, n2: u64, precision: u64) -> RunReport {
    let mut r = RunReport::new("hecke", [("n1", json!(n1)), ("n2", json!(n2)), ("prec", json!(precision))]);
    match modgroup::hecke_cosets(n1, n2, 7) {
        Ok(c) => {
            let expected = arith::sigma1(n1) * arith::sigma1(n2);
            r.check("coset-count", c.len() as u64 == expected, format!("{} cosets, sigma({n1}) sigma({n2}) = {expected}", c.len()));
        }
        Err(e) => {
            r.error("coset-count", e);
            return r;
        }
    }
    let lift = match hecke::g7_lift(precision) {
        Ok(l) => l,
        Err(e) => {
            r.error("eigenvalue", e);
            return r;
        }
    };
    let lambda = hecke::eigen_extract(&lift).map(|e| e.get(n1, n2));
    let image = hecke::apply_t(&TwistSystem::trivial(lift.clone()), n1, n2);
    match (lambda, image) {
        (Ok(Some(l)), Ok(t)) => {
            let expected = lift.truncate(t.precision()).expect("smaller precision").scale(&l);
            r.check(
                "eigenvalue",
                t == expected,
                format!("T({n1},{n2}) g = {l} g up to M = {}", t.precision()),
            );
        }
        (Ok(None), _) | (_, Err(HeckeError::PrecisionExhausted { .. })) => {
            r.push("eigenvalue", Status::PrecisionLimited, format!("M = {precision} too small for ({n1}, {n2})"));
        }
        (Err(e), _) | (_, Err(e)) => r.error("eigenvalue", e),
    }
    r
}

pub fn cmd_kernel_test(p: u64, eps: Option<i64>, precision: u64) -> RunReport {
    let mut inputs = vec![("p", json!(p)), ("prec", json!(precision))];
    if let Some(e) = eps {
        inputs.push(("eps", json!(e)));
    }
    let mut r = RunReport::new("kernel-test", inputs);
    if !cm_prime(&mut r, p) {
        return r;
    }
    match theta::kernel_basis(p, precision) {
        Ok(basis) => membership_checks(&mut r, p, &basis, eps),
        Err(e) => r.error("kernel-membership", e),
    }
    r
}

pub fn cmd_hsub(p: u64, precision: u64) -> RunReport {
    let mut r = RunReport::new("hsub", [("p", json!(p)), ("prec", json!(precision))]);
    if cm_prime(&mut r, p) {
        hsub_checks(&mut r, p, precision);
    }
    r
}

/// Normal closure of `tau_{N/d}` against the kernel of reduction mod `N/d`.
pub fn cmd_level_change(n: u64, d: u64, bound: u64) -> RunReport {
    let mut r = RunReport::new("level-change", [("N", json!(n)), ("d", json!(d)), ("bound", json!(bound))]);
    if !arith::is_prime(d) {
        r.fail("input", format!("d = {d} is not prime"));
        return r;
    }
    level_change_verdict(&mut r, n, d, bound);
    r
}

fn level_change_verdict(r: &mut RunReport, n: u64, d: u64, bound: u64) -> bool {
    let name = format!("level-change N={n} d={d}");
    match modgroup::level_change(n, d, bound) {
        Ok(lc) => {
            let detail = format!(
                "{}, orders {} {} {}",
                if lc.equal { "EQUAL" } else { "UNEQUAL" },
                lc.closure_order,
                if lc.equal { "=" } else { "vs" },
                lc.kernel_order
            );
            r.check(name, lc.equal, detail);
            lc.equal
        }
        Err(e) => {
            r.error(name, e);
            false
        }
    }
}

/// Every `(N, d)` with `2 <= N <= bound` and `d` a prime divisor of `N`.
/// Success means only that no counterexample exists in that range.
pub fn cmd_level_change_search(bound: u64) -> RunReport {
    let mut r = RunReport::new("level-change", [("search", json!(true)), ("bound", json!(bound))]);
    let mut scanned = 0;
    for n in 2..=bound {
        for d in arith::prime_divisors(n) {
            let mut inner = RunReport::new("level-change", Vec::<(&str, _)>::new());
            scanned += 1;
            if !level_change_verdict(&mut inner, n, d, bound) {
                r.verdicts.extend(inner.verdicts);
            }
        }
    }
    if r.passed() {
        r.pass("search", format!("no counterexample found among {scanned} pairs with N <= {bound}"));
    }
    r
}

/// Coset count, pairwise disjointness, and reduction of seeded random
/// elements `gamma delta gamma'` of the double coset.
pub fn cmd_cosets(n1: u64, n2: u64, n: u64, eps: i64, samples: usize, seed: u64) -> RunReport {
    let mut r = RunReport::new(
        "cosets",
        [("n1", json!(n1)), ("n2", json!(n2)), ("N", json!(n)), ("eps", json!(eps)), ("samples", json!(samples))],
    );
    r.seed = Some(seed);
    let cosets = match modgroup::hecke_cosets(n1, n2, n) {
        Ok(c) => c,
        Err(e) => {
            r.error("coset-count", e);
            return r;
        }
    };
    let expected = arith::sigma1(n1) * arith::sigma1(n2);
    r.check("coset-count", cosets.len() as u64 == expected, format!("{} cosets, sigma({n1}) sigma({n2}) = {expected}", cosets.len()));
    let Some(inv) = arith::mod_inv(n2 as i64, n) else {
        r.fail("input", format!("{n2} is not a unit mod {n}"));
        return r;
    };
    let eps2 = arith::modn(eps * n1 as i64 * inv as i64, n) as i64;
    let mats: Vec<(IntMatrix, IntMatrix)> = cosets.iter().map(|c| c.matrices()).collect();
    let overlap = (0..mats.len())
        .flat_map(|i| (i + 1..mats.len()).map(move |j| (i, j)))
        .find(|&(i, j)| modgroup::same_coset((&mats[i].0, &mats[i].1), (&mats[j].0, &mats[j].1), eps, n));
    match overlap {
        None => r.pass("disjoint", format!("{} pairs of representatives in distinct cosets", mats.len() * (mats.len() - 1) / 2)),
        Some((i, j)) => r.fail("disjoint", format!("representatives {i} and {j} share a coset")),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let pick = rand::Rng::gen_range(&mut rng, 0..mats.len());
        let left = modgroup::random_gamma_eps(&mut rng, eps, n);
        let right = modgroup::random_gamma_eps(&mut rng, eps2, n);
        let (Ok((g1, g2)), Ok((h1, h2))) = (left, right) else {
            r.fail("random-reduction", format!("sample {k}: eps = {eps} is not a unit mod {n}"));
            return r;
        };
        let d1 = g1.mul(&mats[pick].0).mul(&h1);
        let d2 = g2.mul(&mats[pick].1).mul(&h2);
        let hits: Vec<usize> =
            (0..mats.len()).filter(|&i| modgroup::same_coset((&d1, &d2), (&mats[i].0, &mats[i].1), eps, n)).collect();
        match modgroup::reduce_to_coset((&d1, &d2), n1, n2, n, eps, eps2) {
            Ok(red) if hits == [red.index] => {}
            Ok(red) => {
                r.fail("random-reduction", format!("sample {k}: ({d1}, {d2}) reduced to {} but lies in {hits:?}", red.index));
                return r;
            }
            Err(e) => {
                r.fail("random-reduction", format!("sample {k}: ({d1}, {d2}): {e}"));
                return r;
            }
        }
    }
    r.pass("random-reduction", format!("{samples} random elements each in exactly one listed coset"));
    r
}

/// The conductor-49 curve from point counts, and its match with the theta
/// series of the principal class at `p = 7`.
pub fn cmd_oracle(precision: u64) -> RunReport {
    let mut r = RunReport::new("oracle", [("curve", json!("49a")), ("prec", json!(precision))]);
    let e = CurveSpec::conductor_49();
    r.check("discriminant", e.discriminant() == -343, format!("disc = {}, bad primes {:?}", e.discriminant(), e.bad_primes()));
    let mut inert_nonzero = None;
    let mut hasse = None;
    for q in arith::primes_up_to(precision).into_iter().filter(|&q| q != 7) {
        match e.a_q(q) {
            Ok(a) if arith::legendre(q as i64, 7).ok() == Some(-1) && a != 0 => inert_nonzero = inert_nonzero.or(Some((q, a))),
            Ok(_) => {}
            Err(OracleError::HasseViolated { q, a }) => hasse = hasse.or(Some((q, a))),
            Err(err) => {
                r.error("hasse", err);
                return r;
            }
        }
    }
    match hasse {
        None => r.pass("hasse", format!("|a_q| <= 2 sqrt(q) for good q <= {precision}")),
        Some((q, a)) => r.fail("hasse", format!("a_{q} = {a}")),
    }
    match inert_nonzero {
        None => r.pass("cm-vanishing", format!("a_q = 0 at every inert q <= {precision}")),
        Some((q, a)) => r.fail("cm-vanishing", format!("a_{q} = {a} at inert q")),
    }
    match e.a_bad(7) {
        Ok(a) => r.check("bad-prime", a == 0, format!("a_7 = {a} (additive reduction)")),
        Err(err) => r.error("bad-prime", err),
    }
    cross_validation(&mut r, precision);
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_seven() {
        let r = cmd_verify(7, 60);
        assert!(r.passed(), "{}", r.render_table());
        assert_eq!(r.count(Status::PrecisionLimited), 0, "{}", r.render_table());
        assert!(r.verdict("kernel-rank").unwrap().witness.starts_with("rank 1"));
    }

    #[test]
    fn verify_thirteen_has_empty_kernel() {
        let r = cmd_verify(13, 60);
        assert!(r.passed());
        assert_eq!(r.verdict("kernel-rank").unwrap().witness, "rank 0, predicted 0");
    }

    #[test]
    fn verify_rejects_bad_input() {
        assert!(!cmd_verify(9, 20).passed());
        assert!(!cmd_verify(3, 20).passed());
    }

    #[test]
    fn kernel_test_predictions() {
        let r = cmd_kernel_test(7, Some(-1), 60);
        assert!(r.passed(), "{}", r.render_table());
        assert!(r.verdict("kernel-membership g(7) eps=-1").unwrap().witness.contains("n = (1, 1)"));
    }

    #[test]
    fn hecke_command() {
        let r = cmd_hecke(2, 9, 100);
        assert!(r.passed(), "{}", r.render_table());
        assert!(r.verdict("eigenvalue").unwrap().witness.starts_with("T(2,9) g = -3 g"));
        let r = cmd_hecke(11, 11, 10);
        assert_eq!(r.verdict("eigenvalue").unwrap().status, Status::PrecisionLimited);
        assert!(!cmd_hecke(7, 1, 20).passed());
    }

    #[test]
    fn level_change_examples() {
        let r = cmd_level_change(4, 2, 32);
        assert!(r.passed());
        assert!(r.verdicts[0].witness.contains("orders 8 = 8"));
        assert!(cmd_level_change(9, 3, 32).verdicts[0].witness.contains("orders 27 = 27"));
        assert!(!cmd_level_change(40, 2, 32).passed());
        assert!(!cmd_level_change(8, 4, 32).passed());
    }

    #[test]
    fn cosets_are_deterministic() {
        let a = cmd_cosets(2, 9, 7, -1, 40, 3);
        assert!(a.passed(), "{}", a.render_table());
        assert_eq!(a.to_json(), cmd_cosets(2, 9, 7, -1, 40, 3).to_json());
        let b = cmd_cosets(2, 4, 7, 2, 40, 3);
        assert!(b.passed(), "{}", b.render_table());
    }

    #[test]
    fn oracle_command() {
        let r = cmd_oracle(100);
        assert!(r.passed(), "{}", r.render_table());
        assert!(r.verdict("theta-vs-curve").unwrap().witness.starts_with("f_I = 2 * f_49a"));
    }
}
