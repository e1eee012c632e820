//! Chief series of solvable groups, annotated with complement counts.

use std::collections::{BTreeSet, HashMap};

use super::{Group, GroupError};
use crate::bitset::BitSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChiefFactor {
    /// `|K_i / K_{i-1}|`.
    pub order: usize,
    /// Number of complements of `K_i / K_{i-1}` in `G / K_{i-1}`.
    pub complements: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiefSeries {
    /// `{1} = K_0 < K_1 < .. < K_t = G`.
    pub terms: Vec<BitSet>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    /// Factors sorted, so series can be compared up to reordering.
    pub fn factor_multiset(&self) -> Vec<ChiefFactor> {
        let mut v = self.factors.clone();
        v.sort();
        v
    }
}

struct NormalLattice<'a> {
    group: &'a Group,
    normal: Vec<usize>,
}

impl<'a> NormalLattice<'a> {
    fn new(group: &'a Group) -> Result<Self, GroupError> {
        Ok(Self { group, normal: group.normal_subgroups()? })
    }

    fn set(&self, i: usize) -> &BitSet {
        self.group.lattice().expect("lattice cached").get(i).members()
    }

    /// Normal subgroups `N > K` of `G` with no normal subgroup strictly between.
    fn minimal_over(&self, k: usize) -> Vec<usize> {
        let ks = self.set(k);
        let above: Vec<usize> = self.normal.iter().copied().filter(|&n| n != k && ks.is_subset(self.set(n))).collect();
        above
            .iter()
            .copied()
            .filter(|&n| {
                let ns = self.set(n);
                !above.iter().any(|&m| m != n && self.set(m).is_subset(ns))
            })
            .collect()
    }

    /// Complements of `N/K` in `G/K`, counted as the subgroups `L >= K` of
    /// `G` with `L N = G` and `L ∩ N = K`.
    fn complement_count(&self, k: usize, n: usize) -> usize {
        let g = self.group;
        let (ks, ns) = (self.set(k), self.set(n));
        let target = g.order() * ks.count() / ns.count();
        g.lattice()
            .expect("lattice cached")
            .iter()
            .filter(|l| l.order() == target && ks.is_subset(l.members()))
            .filter(|l| l.members().intersection(ns) == *ks)
            .count()
    }
}

impl Group {
    /// The chief series built by always choosing, over the current term,
    /// the minimal normal subgroup that comes first in lattice order.
    pub fn chief_series(&self) -> Result<ChiefSeries, GroupError> {
        if !self.is_solvable() {
            return Err(GroupError::NotSolvable);
        }
        let nl = NormalLattice::new(self)?;
        let top = self.lattice()?.top();
        let mut k = 0;
        let mut terms = vec![nl.set(0).clone()];
        let mut factors = Vec::new();
        while k != top {
            let n = *nl.minimal_over(k).iter().min().expect("a proper normal subgroup has a cover");
            factors.push(ChiefFactor { order: nl.set(n).count() / nl.set(k).count(), complements: nl.complement_count(k, n) });
            terms.push(nl.set(n).clone());
            k = n;
        }
        Ok(ChiefSeries { terms, factors })
    }

    /// Whether every chief series has the same multiset of
    /// (factor order, complement count) pairs. All series are explored.
    pub fn complement_count_invariance_check(&self) -> Result<bool, GroupError> {
        Ok(self.chief_factor_multisets()?.len() == 1)
    }

    /// The distinct factor multisets over all chief series.
    pub fn chief_factor_multisets(&self) -> Result<BTreeSet<Vec<ChiefFactor>>, GroupError> {
        if !self.is_solvable() {
            return Err(GroupError::NotSolvable);
        }
        let nl = NormalLattice::new(self)?;
        let top = self.lattice()?.top();
        let mut memo: HashMap<usize, BTreeSet<Vec<ChiefFactor>>> = HashMap::new();
        Ok(multisets_from(&nl, 0, top, &mut memo))
    }

    /// Complements of the normal subgroup `n`, as lattice indices.
    pub fn complements(&self, n: &BitSet) -> Result<Vec<usize>, GroupError> {
        if !self.is_normal(n)? {
            return Err(GroupError::NotNormal);
        }
        let target = self.order() / n.count();
        let lat = self.lattice()?;
        Ok((0..lat.len())
            .filter(|&i| {
                let l = lat.get(i);
                l.order() == target && l.members().intersection_count(n) == 1
            })
            .collect())
    }
}

fn multisets_from(
    nl: &NormalLattice<'_>,
    k: usize,
    top: usize,
    memo: &mut HashMap<usize, BTreeSet<Vec<ChiefFactor>>>,
) -> BTreeSet<Vec<ChiefFactor>> {
    if k == top {
        return BTreeSet::from([Vec::new()]);
    }
    if let Some(v) = memo.get(&k) {
        return v.clone();
    }
    let mut out = BTreeSet::new();
    for n in nl.minimal_over(k) {
        let f = ChiefFactor { order: nl.set(n).count() / nl.set(k).count(), complements: nl.complement_count(k, n) };
        for mut rest in multisets_from(nl, n, top, memo) {
            rest.push(f);
            rest.sort();
            out.insert(rest);
        }
    }
    memo.insert(k, out.clone());
    out
}
