//! Subgroup lattice enumeration and the usual subgroup operations.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::{Group, GroupError};
use crate::bitset::BitSet;

/// Largest order for which the full subgroup lattice is enumerated.
pub const DEFAULT_LATTICE_GUARD: usize = 1000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    members: BitSet,
    order: usize,
    generators: Vec<u32>,
}

impl Subgroup {
    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Generators recorded during enumeration (not necessarily minimal).
    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn contains(&self, x: u32) -> bool {
        self.members.contains(x as usize)
    }
}

/// All subgroups of a group, sorted by order and then lexicographically by
/// member list.
#[derive(Debug, Clone)]
pub struct Lattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<BitSet, usize>,
}

impl Lattice {
    fn new(mut found: Vec<(BitSet, Vec<u32>)>) -> Self {
        found.sort_by(|a, b| a.0.count().cmp(&b.0.count()).then_with(|| a.0.lex_cmp(&b.0)));
        let subgroups: Vec<Subgroup> = found
            .into_iter()
            .map(|(members, generators)| Subgroup { order: members.count(), members, generators })
            .collect();
        let index = subgroups.iter().enumerate().map(|(i, s)| (s.members.clone(), i)).collect();
        Self { subgroups, index }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn iter(&self) -> impl Iterator<Item = &Subgroup> {
        self.subgroups.iter()
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    /// Index of the whole group (always last).
    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }
}

fn enumerate(g: &Group) -> Lattice {
    let mut known: HashMap<BitSet, Vec<u32>> = HashMap::new();
    // cyclic subgroups, keyed by their smallest generator
    let mut cyclic: Vec<(BitSet, u32)> = Vec::new();
    for x in g.elements() {
        let c = g.closure(&[x]);
        if !known.contains_key(&c) {
            let gens = if x == 0 { vec![] } else { vec![x] };
            known.insert(c.clone(), gens);
            cyclic.push((c, x));
        }
    }
    let mut frontier: Vec<(BitSet, Vec<u32>)> = known.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    frontier.sort_by(|a, b| a.0.lex_cmp(&b.0));
    while !frontier.is_empty() {
        let produced: Vec<(BitSet, Vec<u32>)> = frontier
            .par_iter()
            .flat_map_iter(|(h, gens)| {
                let mut local: Vec<(BitSet, Vec<u32>)> = Vec::new();
                let mut seen: HashSet<BitSet> = HashSet::new();
                for (c, x) in &cyclic {
                    if c.is_subset(h) {
                        continue;
                    }
                    let j = g.join(h, gens, &[*x]);
                    if !known.contains_key(&j) && seen.insert(j.clone()) {
                        let mut jg = gens.clone();
                        jg.push(*x);
                        local.push((j, jg));
                    }
                }
                local
            })
            .collect();
        let mut next = Vec::new();
        for (j, jg) in produced {
            if !known.contains_key(&j) {
                known.insert(j.clone(), jg.clone());
                next.push((j, jg));
            }
        }
        frontier = next;
    }
    Lattice::new(known.into_iter().collect())
}

impl Group {
    /// The subgroup lattice, computed once and cached. Fails above
    /// [`DEFAULT_LATTICE_GUARD`].
    pub fn lattice(&self) -> Result<&Lattice, GroupError> {
        self.lattice_with_guard(DEFAULT_LATTICE_GUARD)
    }

    pub fn lattice_with_guard(&self, guard: usize) -> Result<&Lattice, GroupError> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        if self.order > guard {
            return Err(GroupError::LatticeGuard { order: self.order, limit: guard });
        }
        Ok(self.lattice.get_or_init(|| enumerate(self)))
    }

    /// All subgroups, sorted by (order, member list).
    pub fn all_subgroups(&self) -> Result<&[Subgroup], GroupError> {
        Ok(self.lattice()?.subgroups())
    }

    fn require_subgroup(&self, h: &BitSet) -> Result<(), GroupError> {
        if self.is_subgroup_set(h) {
            Ok(())
        } else {
            Err(GroupError::NotSubgroup)
        }
    }

    /// Lattice indices of the maximal subgroups.
    pub fn maximal_subgroups(&self) -> Result<Vec<usize>, GroupError> {
        let lat = self.lattice()?;
        let top = lat.top();
        if top == 0 {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for i in 0..top {
            let h = lat.get(i);
            let maximal = (i + 1..top).all(|j| {
                let k = lat.get(j);
                k.order == h.order || k.order % h.order != 0 || !h.members.is_subset(&k.members)
            });
            if maximal {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, h: &BitSet, g: u32) -> BitSet {
        BitSet::from_iter_with_len(self.order, h.iter().map(|x| self.conj(g, x as u32) as usize))
    }

    pub fn normalizer(&self, h: &BitSet) -> Result<BitSet, GroupError> {
        self.require_subgroup(h)?;
        let gens = self.generating_set(h);
        Ok(BitSet::from_iter_with_len(
            self.order,
            self.elements().filter(|&g| gens.iter().all(|&x| h.contains(self.conj(g, x) as usize))).map(|g| g as usize),
        ))
    }

    pub fn is_normal(&self, h: &BitSet) -> Result<bool, GroupError> {
        self.require_subgroup(h)?;
        Ok(self.is_normal_unchecked(h))
    }

    pub(crate) fn is_normal_unchecked(&self, h: &BitSet) -> bool {
        let hg = self.generating_set(h);
        self.generators.iter().all(|&g| hg.iter().all(|&x| h.contains(self.conj(g, x) as usize)))
    }

    pub fn center(&self) -> BitSet {
        BitSet::from_iter_with_len(
            self.order,
            self.elements()
                .filter(|&z| self.generators.iter().all(|&g| self.mul(g, z) == self.mul(z, g)))
                .map(|z| z as usize),
        )
    }

    /// Distinct conjugates of `h`, in order of first appearance over `g = 0, 1, ..`.
    pub fn conjugates(&self, h: &BitSet) -> Result<Vec<BitSet>, GroupError> {
        self.require_subgroup(h)?;
        let n = self.normalizer(h)?;
        let mut covered = self.empty_set();
        let mut out = Vec::new();
        for g in self.elements() {
            if covered.contains(g as usize) {
                continue;
            }
            // the coset g N(H) yields the same conjugate
            for x in n.iter() {
                covered.insert(self.mul(g, x as u32) as usize);
            }
            out.push(self.conjugate(h, g));
        }
        Ok(out)
    }

    /// Lattice indices of the normal subgroups, in lattice order.
    pub fn normal_subgroups(&self) -> Result<Vec<usize>, GroupError> {
        let lat = self.lattice()?;
        Ok((0..lat.len()).filter(|&i| self.is_normal_unchecked(lat.get(i).members())).collect())
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest
    /// member, so the coset of the identity gets ID 0.
    pub fn quotient(&self, n: &BitSet) -> Result<Group, GroupError> {
        if !self.is_normal(n)? {
            return Err(GroupError::NotNormal);
        }
        let (coset_of, reps) = self.cosets(n);
        let m = reps.len();
        let mut mul = vec![0u32; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                mul[i * m + j] = coset_of[self.mul(a, b) as usize];
            }
        }
        let mut gens = Vec::new();
        for &g in &self.generators {
            let c = coset_of[g as usize];
            if c != 0 && !gens.contains(&c) {
                gens.push(c);
            }
        }
        Ok(Group::from_table_unchecked(m, mul, gens, None))
    }

    /// Left cosets `xN`: the coset index of every element, and the smallest
    /// member of each coset.
    pub(crate) fn cosets(&self, n: &BitSet) -> (Vec<u32>, Vec<u32>) {
        let mut coset_of = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in self.elements() {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for y in n.iter() {
                coset_of[self.mul(x, y as u32) as usize] = id;
            }
        }
        (coset_of, reps)
    }
}
