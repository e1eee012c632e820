//! Certificates and their independent verification.

use super::SolverError;
use crate::bitset::BitSet;
use crate::group::{Group, GroupError};

/// Proper subgroups, as indices into the lattice, whose union is `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverCertificate {
    pub members: Vec<usize>,
}

/// Nontrivial proper subgroups, as lattice indices, meeting pairwise in
/// the identity and covering `G`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionCertificate {
    pub members: Vec<usize>,
}

fn resolve(g: &Group, sets: &[BitSet]) -> Result<Vec<usize>, SolverError> {
    let lat = g.lattice()?;
    let mut out = sets
        .iter()
        .map(|s| lat.index_of(s).ok_or(SolverError::Group(GroupError::NotSubgroup)))
        .collect::<Result<Vec<_>, _>>()?;
    out.sort_unstable();
    Ok(out)
}

fn lookup(g: &Group, members: &[usize]) -> Result<Vec<BitSet>, SolverError> {
    let lat = g.lattice()?;
    members
        .iter()
        .map(|&i| if i < lat.len() { Ok(lat.get(i).members().clone()) } else { Err(SolverError::InvalidIndex(i)) })
        .collect()
}

macro_rules! certificate_common {
    ($t:ty) => {
        impl $t {
            /// Builds a certificate from member sets; each must be a subgroup.
            pub fn from_sets(g: &Group, sets: &[BitSet]) -> Result<Self, SolverError> {
                Ok(Self { members: resolve(g, sets)? })
            }

            pub fn sets(&self, g: &Group) -> Result<Vec<BitSet>, SolverError> {
                lookup(g, &self.members)
            }

            pub fn size(&self) -> usize {
                self.members.len()
            }
        }
    };
}

certificate_common!(CoverCertificate);
certificate_common!(PartitionCertificate);

impl PartitionCertificate {
    pub fn max_member_order(&self, g: &Group) -> Result<usize, SolverError> {
        Ok(self.sets(g)?.iter().map(BitSet::count).max().unwrap_or(0))
    }
}

pub fn verify_cover(g: &Group, cert: &CoverCertificate) -> Result<bool, SolverError> {
    Ok(verify_cover_sets(g, &cert.sets(g)?))
}

pub fn verify_partition(g: &Group, cert: &PartitionCertificate) -> Result<bool, SolverError> {
    Ok(verify_partition_sets(g, &cert.sets(g)?))
}

fn proper_subgroup(g: &Group, s: &BitSet) -> bool {
    s.capacity() == g.order() && s.count() < g.order() && g.is_subgroup_set(s)
}

/// Every member is a proper subgroup and the union is `G`.
pub fn verify_cover_sets(g: &Group, sets: &[BitSet]) -> bool {
    if !sets.iter().all(|s| proper_subgroup(g, s)) {
        return false;
    }
    let mut union = g.empty_set();
    for s in sets {
        union.union_with(s);
    }
    union.count() == g.order()
}

/// Every member is a nontrivial proper subgroup and each nonidentity
/// element lies in exactly one member.
pub fn verify_partition_sets(g: &Group, sets: &[BitSet]) -> bool {
    if !sets.iter().all(|s| s.count() > 1 && proper_subgroup(g, s)) {
        return false;
    }
    let mut union = g.empty_set();
    let mut total = 0;
    for s in sets {
        union.union_with(s);
        total += s.count() - 1;
    }
    union.count() == g.order() && total == g.order() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::constructors::*;

    #[test]
    fn s4_families() {
        let g = symmetric(4).unwrap();
        let lat = g.lattice().unwrap();
        let a4 = lat.iter().find(|s| s.order() == 12).unwrap().members().clone();
        let t = g.closure(&[g.generators()[0]]);
        assert!(!verify_partition_sets(&g, &[a4.clone(), t.clone()]));
        // maximal subgroups cover S4, but dropping the three D8 misses the 4-cycles
        let max: Vec<BitSet> = g.maximal_subgroups().unwrap().iter().map(|&i| lat.get(i).members().clone()).collect();
        assert!(verify_cover_sets(&g, &max));
        let no_d8: Vec<BitSet> = max.iter().filter(|s| s.count() != 8).cloned().collect();
        assert!(!verify_cover_sets(&g, &no_d8));
        assert!(!verify_cover_sets(&g, &[g.full_set()]));
    }

    #[test]
    fn index_errors() {
        let g = symmetric(3).unwrap();
        let bad = PartitionCertificate { members: vec![99] };
        assert_eq!(verify_partition(&g, &bad), Err(SolverError::InvalidIndex(99)));
        let mut junk = g.closure(&[]);
        junk.insert(1);
        junk.insert(2);
        assert!(CoverCertificate::from_sets(&g, &[junk]).is_err());
    }

    #[test]
    fn klein_partition() {
        let g = elementary_abelian(2, 2).unwrap();
        let lines: Vec<BitSet> = (1..4).map(|x| g.closure(&[x])).collect();
        assert!(verify_partition_sets(&g, &lines));
        let cert = PartitionCertificate::from_sets(&g, &lines).unwrap();
        assert!(verify_partition(&g, &cert).unwrap());
        assert!(!verify_partition_sets(&g, &lines[..2]));
        assert!(!verify_partition_sets(&g, &[lines[0].clone(), lines[0].clone(), lines[1].clone()]));
    }
}
