use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use super::{ModGroupError, ModMatrix};
use crate::exactmath::arith;

/// Environment variable overriding the largest modulus for which full
/// `SL2(Z/N)` enumeration is allowed.
pub const GROUP_BOUND_ENV: &str = "ISOFORMS_MAX_N";
pub const DEFAULT_GROUP_BOUND: u64 = 32;

/// The enumeration bound: [`GROUP_BOUND_ENV`] when set to a number, else 32.
pub fn group_bound() -> u64 {
    std::env::var(GROUP_BOUND_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_GROUP_BOUND)
}

/// A finite group of matrices mod `N`, stored as a sorted element list with
/// a hashed membership index.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    n: u64,
    elements: Vec<ModMatrix>,
    index: HashSet<ModMatrix>,
}

impl MatrixGroup {
    /// Wraps a set of elements. Closure is the caller's responsibility;
    /// [`MatrixGroup::is_closed`] checks it.
    pub fn from_elements(n: u64, elements: impl IntoIterator<Item = ModMatrix>) -> Self {
        let index: HashSet<ModMatrix> = elements.into_iter().collect();
        let mut elements: Vec<ModMatrix> = index.iter().copied().collect();
        elements.sort();
        MatrixGroup { n, elements, index }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &ModMatrix) -> bool {
        self.index.contains(g)
    }

    pub fn elements(&self) -> &[ModMatrix] {
        &self.elements
    }

    /// Same element set.
    pub fn same_elements(&self, other: &Self) -> bool {
        self.n == other.n && self.index == other.index
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.index.iter().all(|g| other.contains(g))
    }

    /// Identity present, closed under products and inverses.
    pub fn is_closed(&self) -> bool {
        self.contains(&ModMatrix::identity(self.n))
            && self.elements.iter().all(|g| self.contains(&g.sl2_inverse()))
            && self.elements.iter().all(|g| self.elements.iter().all(|h| self.contains(&g.mul(h))))
    }

    pub fn is_normal_in(&self, g: &Self) -> bool {
        g.elements.iter().all(|x| {
            let xi = x.sl2_inverse();
            self.elements.iter().all(|h| self.contains(&x.mul(h).mul(&xi)))
        })
    }
}

impl Serialize for MatrixGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

/// `|SL2(Z/N)| = N^3 prod_{p | N} (1 - 1/p^2)`.
pub fn sl2_order(n: u64) -> u64 {
    arith::prime_divisors(n).into_iter().fold(n * n * n, |acc, p| acc / (p * p) * (p * p - 1))
}

/// All of `SL2(Z/N)`, refusing moduli above [`group_bound`].
pub fn enumerate_sl2(n: u64) -> Result<MatrixGroup, ModGroupError> {
    enumerate_sl2_bounded(n, group_bound())
}

pub fn enumerate_sl2_bounded(n: u64, bound: u64) -> Result<MatrixGroup, ModGroupError> {
    if n < 2 {
        return Err(ModGroupError::ModulusTooSmall(n));
    }
    if n > bound {
        return Err(ModGroupError::BoundExceeded { n, bound });
    }
    let mut out = Vec::with_capacity(sl2_order(n) as usize);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let m = ModMatrix::new(n, a as i64, b as i64, c as i64, d as i64);
                    if m.det() == 1 {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(MatrixGroup::from_elements(n, out))
}

/// The subgroup generated by `gens`, by breadth-first closure under right
/// multiplication. In a finite group this also contains all inverses.
pub fn generated_subgroup(n: u64, gens: &[ModMatrix]) -> MatrixGroup {
    let id = ModMatrix::identity(n);
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    MatrixGroup::from_elements(n, seen)
}

/// The smallest normal subgroup of `group` containing `g`: the subgroup
/// generated by the conjugacy class of `g`. Conjugates are added as
/// generators only when not already inside the current closure.
pub fn normal_closure(group: &MatrixGroup, g: &ModMatrix) -> Result<MatrixGroup, ModGroupError> {
    if !group.contains(g) {
        return Err(ModGroupError::NotInGroup(g.to_string()));
    }
    let n = group.modulus();
    let mut class: Vec<ModMatrix> = group
        .elements()
        .iter()
        .map(|x| x.mul(g).mul(&x.sl2_inverse()))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    class.sort();
    let mut gens = Vec::new();
    let mut closure = MatrixGroup::from_elements(n, [ModMatrix::identity(n)]);
    for c in class {
        if !closure.contains(&c) {
            gens.push(c);
            closure = generated_subgroup(n, &gens);
        }
    }
    Ok(closure)
}

/// `{ g in SL2(Z/N) : g = 1 mod N/d }`.
pub fn reduction_kernel(n: u64, d: u64) -> Result<MatrixGroup, ModGroupError> {
    reduction_kernel_bounded(n, d, group_bound())
}

pub fn reduction_kernel_bounded(n: u64, d: u64, bound: u64) -> Result<MatrixGroup, ModGroupError> {
    if d == 0 || n % d != 0 {
        return Err(ModGroupError::NotADivisor { d, n });
    }
    let m = n / d;
    let full = enumerate_sl2_bounded(n, bound)?;
    Ok(MatrixGroup::from_elements(
        n,
        full.elements().iter().copied().filter(|g| g.reduce(m).is_identity()),
    ))
}

/// Outcome of comparing the normal closure of `tau_{N/d}` with the kernel of
/// reduction mod `N/d`.
#[derive(Clone, Debug, Serialize)]
pub struct LevelChange {
    pub n: u64,
    pub d: u64,
    pub closure_order: usize,
    pub kernel_order: usize,
    pub equal: bool,
}

pub fn level_change(n: u64, d: u64, bound: u64) -> Result<LevelChange, ModGroupError> {
    if d == 0 || n % d != 0 {
        return Err(ModGroupError::NotADivisor { d, n });
    }
    let full = enumerate_sl2_bounded(n, bound)?;
    let closure = normal_closure(&full, &ModMatrix::tau(n, (n / d) as i64))?;
    let m = n / d;
    let kernel =
        MatrixGroup::from_elements(n, full.elements().iter().copied().filter(|g| g.reduce(m).is_identity()));
    Ok(LevelChange {
        n,
        d,
        closure_order: closure.order(),
        kernel_order: kernel.order(),
        equal: closure.same_elements(&kernel),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_orders() {
        for (n, order) in [(2, 6), (3, 24), (4, 48), (5, 120), (6, 144), (7, 336), (9, 648)] {
            let g = enumerate_sl2(n).unwrap();
            assert_eq!(g.order(), order, "N = {n}");
            assert_eq!(sl2_order(n), order as u64);
        }
        assert!(enumerate_sl2(2).unwrap().is_closed());
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(enumerate_sl2_bounded(40, 32), Err(ModGroupError::BoundExceeded { n: 40, bound: 32 })));
        assert!(matches!(enumerate_sl2(1), Err(ModGroupError::ModulusTooSmall(1))));
    }

    #[test]
    fn closures_from_examples() {
        let g4 = enumerate_sl2(4).unwrap();
        let trivial = normal_closure(&g4, &ModMatrix::identity(4)).unwrap();
        assert_eq!(trivial.order(), 1);
        let c = normal_closure(&g4, &ModMatrix::tau(4, 2)).unwrap();
        assert_eq!(c.order(), 8);
        assert!(c.is_closed() && c.is_normal_in(&g4));
        for p in [2, 3, 5, 7] {
            let g = enumerate_sl2(p).unwrap();
            assert!(normal_closure(&g, &ModMatrix::tau(p, 1)).unwrap().same_elements(&g));
        }
        let outside = ModMatrix::new(4, 2, 0, 0, 2);
        assert!(normal_closure(&g4, &outside).is_err());
    }

    #[test]
    fn reduction_kernels() {
        assert_eq!(reduction_kernel(4, 2).unwrap().order(), 8);
        assert_eq!(reduction_kernel(9, 3).unwrap().order(), 27);
        assert_eq!(reduction_kernel(5, 5).unwrap().order(), 120);
        assert!(reduction_kernel(9, 2).is_err());
    }

    #[test]
    fn level_change_small() {
        for (n, d) in [(4, 2), (6, 2), (6, 3), (8, 2), (9, 3), (10, 5), (12, 2), (12, 3)] {
            let r = level_change(n, d, 32).unwrap();
            assert!(r.equal, "N = {n}, d = {d}: {} vs {}", r.closure_order, r.kernel_order);
        }
    }

    #[test]
    fn theta_is_an_automorphism() {
        for n in 2..=12u64 {
            let g = enumerate_sl2(n).unwrap();
            for eps in arith::units(n) {
                let eps = eps as i64;
                let images: HashSet<ModMatrix> = g.elements().iter().map(|x| x.theta(eps).unwrap()).collect();
                assert_eq!(images.len(), g.order());
                for x in g.elements() {
                    let tx = x.theta(eps).unwrap();
                    assert_eq!(tx.det(), x.det());
                    for y in g.elements() {
                        assert_eq!(x.mul(y).theta(eps).unwrap(), tx.mul(&y.theta(eps).unwrap()));
                    }
                }
            }
        }
    }
}
