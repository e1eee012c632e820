//! Explicit partitions: upper bounds for ρ and incumbents for the solver.
//!
//! Every family is checked with [`verify_partition_sets`] before it is
//! returned.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::bitset::BitSet;
use crate::field::{is_prime, prime_power, FiniteField};
use crate::group::constructors::{elementary_abelian_realized, pgl2_realized, psl2_realized};
use crate::group::{FrobeniusWitness, Group, GroupError};
use crate::solver::{verify_partition_sets, PartitionCertificate, SolverError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid Frobenius witness")]
    InvalidWitness,
    #[error("parameters out of range: {0}")]
    OutOfRange(String),
    #[error("constructed family is not a partition: {0}")]
    NotAPartition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A verified partition together with the group it partitions.
#[derive(Debug, Clone)]
pub struct ConstructedPartition {
    pub group: Group,
    pub members: Vec<BitSet>,
}

impl ConstructedPartition {
    fn checked(group: Group, mut members: Vec<BitSet>, what: &str) -> Result<Self, ConstructionError> {
        members.sort_by(|a, b| a.count().cmp(&b.count()).then_with(|| a.lex_cmp(b)));
        if !verify_partition_sets(&group, &members) {
            return Err(ConstructionError::NotAPartition(what.to_string()));
        }
        Ok(Self { group, members })
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Member orders with multiplicities.
    pub fn order_profile(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for s in &self.members {
            *m.entry(s.count()).or_insert(0) += 1;
        }
        m
    }

    /// Lattice-index certificate (needs the subgroup lattice).
    pub fn certificate(&self) -> Result<PartitionCertificate, SolverError> {
        PartitionCertificate::from_sets(&self.group, &self.members)
    }
}

/// The kernel together with all conjugates of the complement.
pub fn frobenius_partition(g: &Group, w: &FrobeniusWitness) -> Result<Vec<BitSet>, ConstructionError> {
    let (k, h) = (&w.kernel, &w.complement);
    let valid = g.is_subgroup_set(k)
        && g.is_subgroup_set(h)
        && k.intersection_count(h) == 1
        && k.count() * h.count() == g.order()
        && g.is_normal(k)?;
    if !valid {
        return Err(ConstructionError::InvalidWitness);
    }
    let mut members = vec![k.clone()];
    members.extend(g.conjugates(h)?);
    if !verify_partition_sets(g, &members) {
        return Err(ConstructionError::InvalidWitness);
    }
    Ok(members)
}

/// `H_p(G)` together with the subgroups `<x>` for `x` outside it, for a
/// group of Hughes-Thompson type relative to `p`.
pub fn hughes_thompson_partition(g: &Group, p: u64) -> Result<Vec<BitSet>, ConstructionError> {
    let h = g.hughes_subgroup(p)?;
    if h.count() == g.order() || g.is_pgroup() {
        return Err(ConstructionError::OutOfRange(format!("not of Hughes-Thompson type for {p}")));
    }
    let mut members = vec![h.clone()];
    let mut seen = h;
    for x in g.elements() {
        if !seen.contains(x as usize) {
            let c = g.closure(&[x]);
            seen.union_with(&c);
            members.push(c);
        }
    }
    if !verify_partition_sets(g, &members) {
        return Err(ConstructionError::NotAPartition("Hughes-Thompson family".into()));
    }
    Ok(members)
}

/// The 1-dimensional subspaces of `C_p^{2k}` viewed as `GF(p^k)^2`, as
/// coordinate vectors over GF(p).
fn lines(p: u64, k: u32) -> Result<Vec<Vec<Vec<u32>>>, ConstructionError> {
    let f = FiniteField::new(p, k).map_err(GroupError::from)?;
    let elems = f.elements();
    let vec_of = |a: &crate::field::FieldElem, b: &crate::field::FieldElem| {
        let mut v = a.coeffs().to_vec();
        v.extend_from_slice(b.coeffs());
        v
    };
    let mut dirs: Vec<(crate::field::FieldElem, crate::field::FieldElem)> = vec![(f.zero(), f.one())];
    dirs.extend(elems.iter().map(|s| (f.one(), s.clone())));
    Ok(dirs
        .iter()
        .map(|(a, b)| elems.iter().map(|t| vec_of(&f.mul(t, a), &f.mul(t, b))).collect())
        .collect())
}

/// A partition of `C_p^n` of size `1 + p^ceil(n/2)`: the lines of a
/// 2-dimensional space over `GF(p^(n/2))` for even `n`; for odd `n` the
/// same family for rank `n + 1`, cut down to a hyperplane.
pub fn elementary_abelian_partition(p: u64, n: u32) -> Result<ConstructedPartition, ConstructionError> {
    if !is_prime(p) || n < 2 {
        return Err(ConstructionError::OutOfRange(format!("C{p}^{n} needs a prime p and n >= 2")));
    }
    let r = elementary_abelian_realized(p, n)?;
    let index = r.index();
    let order = r.group.order();
    let k = n.div_ceil(2);
    let members: Vec<BitSet> = lines(p, k)?
        .into_iter()
        .map(|line| {
            let pts = line.into_iter().filter_map(|mut v| {
                // odd rank: keep the hyperplane with last coordinate 0
                if v.len() > n as usize
                    && v.pop() != Some(0) {
                        return None;
                    }
                Some(index[&v] as usize)
            });
            BitSet::from_iter_with_len(order, pts)
        })
        .filter(|s| s.count() > 1)
        .collect();
    ConstructedPartition::checked(r.group, members, "subspace partition")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinearVariant {
    Psl,
    Pgl,
}

/// Distinct cyclic subgroups generated by elements of order `t`.
fn cyclic_of_order(g: &Group, t: u32) -> Vec<BitSet> {
    let mut seen = g.empty_set();
    let mut out = Vec::new();
    for x in g.elements() {
        if g.element_order(x) == t && !seen.contains(x as usize) {
            let c = g.closure(&[x]);
            seen.union_with(&c);
            out.push(c);
        }
    }
    out
}

/// Point stabilizer, tori outside it, and Sylow subgroups outside it.
/// Size `q^2 + 1`.
pub fn psl_pgl_partition(q: u64, variant: LinearVariant) -> Result<ConstructedPartition, ConstructionError> {
    let Some((p, _)) = prime_power(q) else {
        return Err(ConstructionError::OutOfRange(format!("{q} is not a prime power")));
    };
    let halved = p != 2 && variant == LinearVariant::Psl;
    let ok = match (p == 2, variant) {
        (true, _) => q >= 4,
        (false, LinearVariant::Pgl) => q >= 5,
        (false, LinearVariant::Psl) => q >= 7,
    };
    if !ok {
        return Err(ConstructionError::OutOfRange(format!("no q^2+1 construction for {variant:?}(2,{q})")));
    }
    let r = if variant == LinearVariant::Psl { psl2_realized(q)? } else { pgl2_realized(q)? };
    let g = &r.group;
    // stabilizer of (0:1): lower-left entry zero
    let stab = BitSet::from_iter_with_len(
        g.order(),
        r.elements.iter().enumerate().filter(|(_, m)| m.entries()[2].is_zero()).map(|(i, _)| i),
    );
    let (t1, t2) = if halved { ((q - 1) / 2, q.div_ceil(2)) } else { (q - 1, q + 1) };
    let unipotent = BitSet::from_iter_with_len(
        g.order(),
        stab.iter().filter(|&x| x == 0 || g.element_order(x as u32) as u64 == p),
    );
    let mut members = vec![stab.clone()];
    members.extend(cyclic_of_order(g, t1 as u32).into_iter().filter(|c| !c.is_subset(&stab)));
    members.extend(cyclic_of_order(g, t2 as u32));
    members.extend(g.conjugates(&unipotent)?.into_iter().filter(|s| !s.is_subset(&stab)));
    let part = ConstructedPartition::checked(r.group.clone(), members, "linear group family")?;
    debug_assert_eq!(part.size() as u64, q * q + 1);
    Ok(part)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exceptional {
    Pgl2_5,
    Psl2_7,
    Psl2_9,
    Psl2_11,
}

impl Exceptional {
    pub const ALL: [Exceptional; 4] = [Self::Pgl2_5, Self::Psl2_7, Self::Psl2_9, Self::Psl2_11];

    pub fn group(self) -> Result<Group, GroupError> {
        match self {
            Self::Pgl2_5 => crate::group::constructors::pgl2(5),
            Self::Psl2_7 => crate::group::constructors::psl2(7),
            Self::Psl2_9 => crate::group::constructors::psl2(9),
            Self::Psl2_11 => crate::group::constructors::psl2(11),
        }
    }

    /// Order of the large member and, per further member order, whether
    /// only those outside it are taken, with the expected count. Members
    /// are cyclic except the order-9 Sylow subgroups of PSL2(9).
    fn recipe(self) -> (usize, &'static [(usize, bool, usize)]) {
        match self {
            Self::Pgl2_5 => (20, &[(5, true, 5), (4, true, 10), (6, false, 10)]),
            Self::Psl2_7 => (21, &[(3, true, 21), (7, true, 7), (4, false, 21)]),
            Self::Psl2_9 => (36, &[(4, true, 36), (5, false, 36), (9, true, 9)]),
            Self::Psl2_11 => (55, &[(5, true, 55), (6, false, 55), (11, true, 11)]),
        }
    }

    pub fn expected_size(self) -> usize {
        let (_, rest) = self.recipe();
        1 + rest.iter().map(|r| r.2).sum::<usize>()
    }
}

/// The explicit families for PGL2(5), PSL2(7), PSL2(9) and PSL2(11),
/// assembled from the subgroup lattice by order: one large subgroup plus
/// the listed cyclic (or Sylow) subgroups, the flagged ones only when not
/// inside it.
pub fn exceptional_partition(which: Exceptional) -> Result<ConstructedPartition, ConstructionError> {
    let g = which.group()?;
    let lat = g.lattice()?;
    let (big, rest) = which.recipe();
    let h = lat
        .iter()
        .find(|s| s.order() == big)
        .ok_or_else(|| ConstructionError::NotAPartition(format!("no subgroup of order {big}")))?
        .members()
        .clone();
    let mut members = vec![h.clone()];
    for &(order, outside_only, expected) in rest {
        let picked: Vec<BitSet> = lat
            .iter()
            .filter(|s| s.order() == order)
            .filter(|s| order == 9 || s.members().iter().any(|x| g.element_order(x as u32) as usize == order))
            .map(|s| s.members().clone())
            .filter(|s| !outside_only || !s.is_subset(&h))
            .collect();
        if picked.len() != expected {
            return Err(ConstructionError::NotAPartition(format!(
                "expected {expected} subgroups of order {order}, found {}",
                picked.len()
            )));
        }
        members.extend(picked);
    }
    let part = ConstructedPartition::checked(g.clone(), members, "exceptional family")?;
    debug_assert_eq!(part.size(), which.expected_size());
    Ok(part)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DihedralReport {
    pub q: u64,
    /// Two distinct conjugates of `D_{2(q-1)}` meeting nontrivially, with
    /// the order of their intersection.
    pub split_witness: Option<(BitSet, BitSet, usize)>,
    /// Intersection orders over all pairs of distinct `D_{2(q+1)}`.
    pub nonsplit_histogram: BTreeMap<usize, usize>,
}

impl DihedralReport {
    pub fn claims_hold(&self) -> bool {
        self.split_witness.is_some() && self.nonsplit_histogram.keys().eq([2].iter())
    }
}

/// Checks, in `PSL2(q)` for `q` in {4, 8}, that some two conjugates of
/// `D_{2(q-1)}` meet nontrivially and that any two `D_{2(q+1)}` meet in
/// a subgroup of order 2.
pub fn dihedral_intersection_checks(q: u64) -> Result<DihedralReport, ConstructionError> {
    if q != 4 && q != 8 {
        return Err(ConstructionError::OutOfRange(format!("q = {q}, expected 4 or 8")));
    }
    let g = crate::group::constructors::psl2(q)?;
    let normalizers = |t: u64| -> Result<Vec<BitSet>, ConstructionError> {
        let mut seen = HashMap::new();
        for c in cyclic_of_order(&g, t as u32) {
            let n = g.normalizer(&c)?;
            seen.entry(n.words().to_vec()).or_insert(n);
        }
        let mut v: Vec<BitSet> = seen.into_values().collect();
        v.sort_by(|a, b| a.lex_cmp(b));
        Ok(v)
    };
    let split = normalizers(q - 1)?;
    let nonsplit = normalizers(q + 1)?;
    debug_assert!(split.iter().all(|d| d.count() as u64 == 2 * (q - 1)));
    let mut split_witness = None;
    'outer: for (i, a) in split.iter().enumerate() {
        for b in &split[i + 1..] {
            let k = a.intersection_count(b);
            if k > 1 {
                split_witness = Some((a.clone(), b.clone(), k));
                break 'outer;
            }
        }
    }
    let mut nonsplit_histogram = BTreeMap::new();
    for (i, a) in nonsplit.iter().enumerate() {
        for b in &nonsplit[i + 1..] {
            *nonsplit_histogram.entry(a.intersection_count(b)).or_insert(0) += 1;
        }
    }
    Ok(DihedralReport { q, split_witness, nonsplit_histogram })
}

/// The smallest explicit partition available for `g`: the origin-based
/// families first, then Hughes-Thompson and Frobenius families.
pub fn best_construction(g: &Group) -> Result<Option<ConstructedPartition>, ConstructionError> {
    use crate::spec::GroupSpec;
    let by_origin = match g.origin() {
        Some(GroupSpec::ElementaryAbelian { p, n }) if *n >= 2 => Some(elementary_abelian_partition(*p, *n)?),
        Some(GroupSpec::Psl2(q)) if psl_pgl_partition(*q, LinearVariant::Psl).is_ok() => {
            Some(psl_pgl_partition(*q, LinearVariant::Psl)?)
        }
        Some(GroupSpec::Pgl2(q)) if psl_pgl_partition(*q, LinearVariant::Pgl).is_ok() => {
            Some(psl_pgl_partition(*q, LinearVariant::Pgl)?)
        }
        _ => None,
    };
    if by_origin.is_some() {
        return Ok(by_origin);
    }
    let mut best: Option<Vec<BitSet>> = None;
    let mut offer = |fam: Vec<BitSet>| {
        if best.as_ref().is_none_or(|b| fam.len() < b.len()) {
            best = Some(fam);
        }
    };
    for p in g.hughes_thompson_primes() {
        offer(hughes_thompson_partition(g, p)?);
    }
    if g.order() <= crate::group::DEFAULT_LATTICE_GUARD {
        if let Some(w) = g.frobenius_witness()? {
            offer(frobenius_partition(g, &w)?);
        }
    }
    best.map(|m| ConstructedPartition::checked(g.clone(), m, "structural family")).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::constructors::*;

    #[test]
    fn frobenius_families() {
        for (g, size) in
            [(agl1_frobenius(5, 4).unwrap(), 6), (symmetric(3).unwrap(), 4), (agl1_frobenius(7, 3).unwrap(), 8)]
        {
            let w = g.frobenius_witness().unwrap().unwrap();
            assert_eq!(frobenius_partition(&g, &w).unwrap().len(), size);
        }
        let g = symmetric(3).unwrap();
        let mut w = g.frobenius_witness().unwrap().unwrap();
        std::mem::swap(&mut w.kernel, &mut w.complement);
        assert_eq!(frobenius_partition(&g, &w), Err(ConstructionError::InvalidWitness));
    }

    #[test]
    fn elementary_abelian_sizes() {
        for (p, n, size) in [(2, 2, 3), (3, 2, 4), (2, 3, 5), (2, 4, 5), (3, 3, 10), (2, 5, 9), (5, 2, 6), (2, 6, 9)] {
            let part = elementary_abelian_partition(p, n).unwrap();
            assert_eq!(part.size(), size, "C{p}^{n}");
        }
        assert!(elementary_abelian_partition(2, 1).is_err());
        assert!(elementary_abelian_partition(4, 2).is_err());
    }

    #[test]
    fn linear_sizes() {
        assert_eq!(psl_pgl_partition(4, LinearVariant::Psl).unwrap().size(), 17);
        assert_eq!(psl_pgl_partition(5, LinearVariant::Pgl).unwrap().size(), 26);
        assert_eq!(psl_pgl_partition(7, LinearVariant::Psl).unwrap().size(), 50);
        assert_eq!(psl_pgl_partition(8, LinearVariant::Pgl).unwrap().size(), 65);
        assert!(psl_pgl_partition(5, LinearVariant::Psl).is_err());
        assert!(psl_pgl_partition(3, LinearVariant::Pgl).is_err());
        assert!(psl_pgl_partition(6, LinearVariant::Pgl).is_err());
    }

    #[test]
    fn exceptional_sizes() {
        let p = exceptional_partition(Exceptional::Psl2_7).unwrap();
        assert_eq!(p.size(), 50);
        assert_eq!(p.order_profile(), BTreeMap::from([(3, 21), (4, 21), (7, 7), (21, 1)]));
        assert_eq!(exceptional_partition(Exceptional::Pgl2_5).unwrap().size(), 26);
    }

    #[test]
    fn hughes_thompson_family() {
        let g = dihedral(12).unwrap();
        assert_eq!(hughes_thompson_partition(&g, 2).unwrap().len(), 7);
        assert!(hughes_thompson_partition(&g, 3).is_err());
    }

    #[test]
    fn best_available() {
        let g = dihedral(12).unwrap();
        assert_eq!(best_construction(&g).unwrap().unwrap().size(), 7);
        let g = agl1_frobenius(7, 3).unwrap();
        assert_eq!(best_construction(&g).unwrap().unwrap().size(), 8);
        assert_eq!(best_construction(&elementary_abelian(2, 3).unwrap()).unwrap().unwrap().size(), 5);
        assert!(best_construction(&cyclic(6).unwrap()).unwrap().is_none());
    }

    #[test]
    fn dihedral_claims_q4() {
        let r = dihedral_intersection_checks(4).unwrap();
        assert!(r.claims_hold());
        // six D10 in A5, all pairs meeting in order 2
        assert_eq!(r.nonsplit_histogram, BTreeMap::from([(2, 15)]));
        assert!(dihedral_intersection_checks(16).is_err());
    }
}
