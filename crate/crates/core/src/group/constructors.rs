//! Standard group families, each tagged with the [`GroupSpec`] it realizes.

use super::linear::{AffineDomain, AffineMap, PglDomain, ProjMatrix};
use super::perm::{PermDomain, Permutation};
use super::{build_from_generators, ElementDomain, Group, GroupError, Realized, DEFAULT_ORDER_GUARD};
use crate::field::{is_prime, prime_power, FiniteField};
use crate::spec::GroupSpec;

fn guard(order: u128) -> Result<usize, GroupError> {
    if order > DEFAULT_ORDER_GUARD as u128 {
        Err(GroupError::OrderExceeded { limit: DEFAULT_ORDER_GUARD })
    } else {
        Ok(order as usize)
    }
}

fn invalid(msg: impl Into<String>) -> GroupError {
    GroupError::InvalidParameters(msg.into())
}

struct CyclicDomain {
    n: u32,
}

impl ElementDomain for CyclicDomain {
    type Elem = u32;

    fn identity(&self) -> u32 {
        0
    }

    fn multiply(&self, a: &u32, b: &u32) -> u32 {
        (a + b) % self.n
    }
}

struct VectorDomain {
    p: u32,
    n: usize,
}

impl ElementDomain for VectorDomain {
    type Elem = Vec<u32>;

    fn identity(&self) -> Vec<u32> {
        vec![0; self.n]
    }

    fn multiply(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }
}

/// `x -> s*x + k` on Z_n with `s = -1` when the flag is set.
struct DihedralDomain {
    n: u64,
}

impl ElementDomain for DihedralDomain {
    type Elem = (bool, u64);

    fn identity(&self) -> (bool, u64) {
        (false, 0)
    }

    fn multiply(&self, x: &(bool, u64), y: &(bool, u64)) -> (bool, u64) {
        let k = if y.0 { (self.n - x.1) % self.n } else { x.1 };
        (x.0 ^ y.0, (k + y.1) % self.n)
    }
}

struct ProductDomain<'a> {
    left: &'a Group,
    right: &'a Group,
}

impl ElementDomain for ProductDomain<'_> {
    type Elem = (u32, u32);

    fn identity(&self) -> (u32, u32) {
        (0, 0)
    }

    fn multiply(&self, a: &(u32, u32), b: &(u32, u32)) -> (u32, u32) {
        (self.left.mul(a.0, b.0), self.right.mul(a.1, b.1))
    }
}

pub fn cyclic(n: u64) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(invalid("cyclic group of order 0"));
    }
    let n32 = guard(n as u128)? as u32;
    let gens: Vec<u32> = if n > 1 { vec![1] } else { vec![] };
    let g = build_from_generators(&CyclicDomain { n: n32 }, &gens, n32 as usize)?.group;
    Ok(g.with_origin(GroupSpec::Cyclic(n)))
}

pub fn elementary_abelian_realized(p: u64, n: u32) -> Result<Realized<Vec<u32>>, GroupError> {
    if !is_prime(p) || n == 0 {
        return Err(invalid(format!("C{p}^{n}")));
    }
    let order = guard((p as u128).checked_pow(n).unwrap_or(u128::MAX))?;
    let gens: Vec<Vec<u32>> = (0..n as usize)
        .map(|i| {
            let mut v = vec![0; n as usize];
            v[i] = 1;
            v
        })
        .collect();
    let mut r = build_from_generators(&VectorDomain { p: p as u32, n: n as usize }, &gens, order)?;
    r.group = r.group.with_origin(GroupSpec::ElementaryAbelian { p, n });
    Ok(r)
}

pub fn elementary_abelian(p: u64, n: u32) -> Result<Group, GroupError> {
    Ok(elementary_abelian_realized(p, n)?.group)
}

/// Dihedral group of order `order` (= 2n).
pub fn dihedral(order: u64) -> Result<Group, GroupError> {
    if order < 2 || order % 2 == 1 {
        return Err(invalid(format!("dihedral group of order {order}")));
    }
    guard(order as u128)?;
    let n = order / 2;
    let gens = [(false, 1 % n), (true, 0)];
    let g = build_from_generators(&DihedralDomain { n }, &gens, order as usize)?.group;
    Ok(g.with_origin(GroupSpec::Dihedral(order)))
}

pub fn symmetric_from_generators(degree: usize, gens: &[Permutation]) -> Result<Group, GroupError> {
    Ok(build_from_generators(&PermDomain { degree }, gens, DEFAULT_ORDER_GUARD)?.group)
}

fn cycle(degree: usize, pts: &[usize]) -> Permutation {
    Permutation::from_cycles(degree, &[pts]).expect("valid cycle")
}

pub fn symmetric(n: u32) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(invalid("S0"));
    }
    let d = n as usize;
    let gens = match d {
        1 => vec![],
        2 => vec![cycle(2, &[1, 2])],
        _ => vec![cycle(d, &[1, 2]), cycle(d, &(1..=d).collect::<Vec<_>>())],
    };
    Ok(symmetric_from_generators(d, &gens)?.with_origin(GroupSpec::Symmetric(n)))
}

pub fn alternating(n: u32) -> Result<Group, GroupError> {
    if n == 0 {
        return Err(invalid("A0"));
    }
    let d = n as usize;
    let gens = match d {
        1 | 2 => vec![],
        3 => vec![cycle(3, &[1, 2, 3])],
        _ if d % 2 == 1 => vec![cycle(d, &[1, 2, 3]), cycle(d, &(1..=d).collect::<Vec<_>>())],
        _ => vec![cycle(d, &[1, 2, 3]), cycle(d, &(2..=d).collect::<Vec<_>>())],
    };
    Ok(symmetric_from_generators(d, &gens)?.with_origin(GroupSpec::Alternating(n)))
}

pub fn direct_product(left: &Group, right: &Group) -> Result<Group, GroupError> {
    let order = guard(left.order() as u128 * right.order() as u128)?;
    let gens: Vec<(u32, u32)> = left
        .generators()
        .iter()
        .map(|&g| (g, 0))
        .chain(right.generators().iter().map(|&h| (0, h)))
        .collect();
    let g = build_from_generators(&ProductDomain { left, right }, &gens, order)?.group;
    Ok(match (left.origin(), right.origin()) {
        (Some(a), Some(b)) => g.with_origin(GroupSpec::product(a.clone(), b.clone())),
        _ => g,
    })
}

fn field_for(q: u64) -> Result<FiniteField, GroupError> {
    if prime_power(q).is_none() {
        return Err(invalid(format!("{q} is not a prime power")));
    }
    Ok(FiniteField::with_order(q)?)
}

pub fn psl2_realized(q: u64) -> Result<Realized<ProjMatrix>, GroupError> {
    let field = field_for(q)?;
    let q128 = q as u128;
    let order = guard(q128 * (q128 * q128 - 1) / if q % 2 == 1 { 2 } else { 1 })?;
    let d = PglDomain { field: field.clone() };
    let f = &field;
    let alpha = f.multiplicative_generator();
    let mut gens = vec![
        d.matrix(f.one(), f.one(), f.zero(), f.one()),
        d.matrix(f.zero(), f.neg(&f.one()), f.one(), f.zero()),
    ];
    if f.degree() > 1 {
        gens.push(d.matrix(alpha.clone(), f.zero(), f.zero(), f.inv(&alpha)?));
    }
    let mut r = build_from_generators(&d, &gens, order)?;
    debug_assert_eq!(r.group.order(), order);
    r.group = r.group.with_origin(GroupSpec::Psl2(q));
    Ok(r)
}

pub fn psl2(q: u64) -> Result<Group, GroupError> {
    Ok(psl2_realized(q)?.group)
}

pub fn pgl2_realized(q: u64) -> Result<Realized<ProjMatrix>, GroupError> {
    let field = field_for(q)?;
    let q128 = q as u128;
    let order = guard(q128 * (q128 * q128 - 1))?;
    let d = PglDomain { field: field.clone() };
    let f = &field;
    let alpha = f.multiplicative_generator();
    let mut gens = vec![
        d.matrix(f.one(), f.one(), f.zero(), f.one()),
        d.matrix(f.zero(), f.one(), f.one(), f.zero()),
    ];
    if q > 2 {
        gens.push(d.matrix(alpha, f.zero(), f.zero(), f.one()));
    }
    let mut r = build_from_generators(&d, &gens, order)?;
    debug_assert_eq!(r.group.order(), order);
    r.group = r.group.with_origin(GroupSpec::Pgl2(q));
    Ok(r)
}

pub fn pgl2(q: u64) -> Result<Group, GroupError> {
    Ok(pgl2_realized(q)?.group)
}

/// Translations of GF(q) extended by multiplication with the order-`d`
/// subgroup of GF(q)*.
pub fn agl1_frobenius_realized(q: u64, d: u64) -> Result<Realized<AffineMap>, GroupError> {
    let field = field_for(q)?;
    if d < 2 || !(q - 1).is_multiple_of(d) {
        return Err(invalid(format!("d = {d} must exceed 1 and divide {}", q - 1)));
    }
    let order = guard(q as u128 * d as u128)?;
    let f = &field;
    let beta = f.pow(&f.multiplicative_generator(), (q - 1) / d);
    let mut gens: Vec<AffineMap> = (0..f.degree() as usize)
        .map(|i| {
            let mut coeffs = vec![0; f.degree() as usize];
            coeffs[i] = 1;
            AffineMap { a: f.one(), b: f.element(&coeffs).expect("basis vector") }
        })
        .collect();
    gens.push(AffineMap { a: beta, b: f.zero() });
    let mut r = build_from_generators(&AffineDomain { field: field.clone() }, &gens, order)?;
    r.group = r.group.with_origin(GroupSpec::Agl1 { q, d });
    Ok(r)
}

pub fn agl1_frobenius(q: u64, d: u64) -> Result<Group, GroupError> {
    Ok(agl1_frobenius_realized(q, d)?.group)
}

/// Builds the group described by `spec`.
pub fn build(spec: &GroupSpec) -> Result<Group, GroupError> {
    spec.validate()?;
    if spec.is_suzuki_component() {
        return Err(GroupError::SuzukiNotConstructible);
    }
    guard(spec.order().unwrap_or(u128::MAX))?;
    match *spec {
        GroupSpec::Cyclic(n) => cyclic(n),
        GroupSpec::ElementaryAbelian { p, n } => elementary_abelian(p, n),
        GroupSpec::Dihedral(m) => dihedral(m),
        GroupSpec::Symmetric(n) => symmetric(n),
        GroupSpec::Alternating(n) => alternating(n),
        GroupSpec::Psl2(q) => psl2(q),
        GroupSpec::Pgl2(q) => pgl2(q),
        GroupSpec::Agl1 { q, d } => agl1_frobenius(q, d),
        GroupSpec::Suzuki(_) => Err(GroupError::SuzukiNotConstructible),
        GroupSpec::DirectProduct(ref fs) => {
            let mut acc = build(&fs[0])?;
            for f in &fs[1..] {
                acc = direct_product(&acc, &build(f)?)?;
            }
            Ok(acc.with_origin(spec.clone()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(cyclic(12).unwrap().order(), 12);
        assert_eq!(elementary_abelian(3, 3).unwrap().order(), 27);
        assert_eq!(dihedral(2).unwrap().order(), 2);
        assert_eq!(dihedral(4).unwrap().order(), 4);
        assert_eq!(dihedral(12).unwrap().order(), 12);
        assert_eq!(symmetric(1).unwrap().order(), 1);
        assert_eq!(symmetric(4).unwrap().order(), 24);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(4).unwrap().order(), 12);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(agl1_frobenius(5, 4).unwrap().order(), 20);
        assert_eq!(agl1_frobenius(9, 2).unwrap().order(), 18);
        assert_eq!(agl1_frobenius(16, 5).unwrap().order(), 80);
    }

    #[test]
    fn linear_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
            let expect = q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 };
            assert_eq!(psl2(q).unwrap().order() as u64, expect, "PSL2({q})");
        }
        for q in [2u64, 3, 4, 5, 7, 9] {
            assert_eq!(pgl2(q).unwrap().order() as u64, q * (q * q - 1), "PGL2({q})");
        }
        assert_eq!(psl2(7).unwrap().order(), 168);
        assert_eq!(psl2(4).unwrap().order(), 60);
    }

    #[test]
    fn pgl2_5_has_the_element_orders_of_s5() {
        let g = pgl2(5).unwrap();
        assert_eq!(g.order(), 120);
        let hist = g.order_histogram();
        assert_eq!(hist, vec![(1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20)]);
        assert_eq!(symmetric(5).unwrap().order_histogram(), hist);
    }

    #[test]
    fn invalid_parameters() {
        assert!(cyclic(0).is_err());
        assert!(dihedral(7).is_err());
        assert!(agl1_frobenius(7, 4).is_err());
        assert!(agl1_frobenius(7, 1).is_err());
        assert!(psl2(6).is_err());
        assert!(matches!(build(&GroupSpec::Suzuki(8)), Err(GroupError::SuzukiNotConstructible)));
        assert!(matches!(build(&GroupSpec::Psl2(32)), Err(GroupError::OrderExceeded { .. })));
    }

    #[test]
    fn product_origin() {
        let spec: GroupSpec = "AGL1(5,4) x C3".parse().unwrap();
        let g = build(&spec).unwrap();
        assert_eq!(g.order(), 60);
        assert_eq!(g.origin(), Some(&spec));
    }
}
