//! Structural predicates and the partitionability classification.

use super::{Group, GroupError, DEFAULT_LATTICE_GUARD};
use crate::bitset::BitSet;
use crate::field::factorize;
use crate::solver::{self, SearchBudget};
use crate::spec::GroupSpec;

/// A Frobenius complement together with its kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusWitness {
    pub kernel: BitSet,
    pub complement: BitSet,
}

/// Which recognized family made a group partitionable. Tests run in the
/// order listed; the first match is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionClass {
    S4,
    PGroupProperHughes,
    HughesThompson,
    Frobenius,
    Psl2,
    Pgl2,
    Suzuki,
    /// No structural test matched but the solver found a partition.
    Search,
}

impl PartitionClass {
    pub fn tag(self) -> &'static str {
        match self {
            Self::S4 => "S4",
            Self::PGroupProperHughes => "p-group-with-proper-Hughes",
            Self::HughesThompson => "Hughes-Thompson",
            Self::Frobenius => "Frobenius",
            Self::Psl2 => "PSL2",
            Self::Pgl2 => "PGL2",
            Self::Suzuki => "Suzuki",
            Self::Search => "search",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Partitionability {
    Yes(PartitionClass),
    No,
}

impl Group {
    pub fn is_cyclic(&self) -> bool {
        self.elem_order.iter().any(|&o| o as usize == self.order)
    }

    /// Normal closure of `elems` in the subgroup generated by `within`.
    fn normal_closure(&self, elems: &[u32], within: &[u32]) -> BitSet {
        let mut set = self.closure(elems);
        loop {
            let gens = self.generating_set(&set);
            let extra = gens.iter().flat_map(|&x| within.iter().map(move |&g| (g, x))).map(|(g, x)| self.conj(g, x)).find(|&c| !set.contains(c as usize));
            match extra {
                Some(c) => set = self.join(&set, &gens, &[c]),
                None => return set,
            }
        }
    }

    /// Commutator subgroup of the subgroup `h`.
    pub fn derived_subgroup(&self, h: &BitSet) -> BitSet {
        let gens = self.generating_set(h);
        let comms: Vec<u32> = gens
            .iter()
            .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
            .map(|(a, b)| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            .collect();
        self.normal_closure(&comms, &gens)
    }

    pub fn is_solvable(&self) -> bool {
        let mut h = self.full_set();
        loop {
            if h.count() == 1 {
                return true;
            }
            let d = self.derived_subgroup(&h);
            if d == h {
                return false;
            }
            h = d;
        }
    }

    /// Nilpotent iff every Sylow subgroup is normal, i.e. for each prime
    /// the p-elements number exactly the p-part of the order.
    pub fn is_nilpotent(&self) -> bool {
        factorize(self.order as u64).into_iter().all(|(p, e)| {
            let part = p.pow(e) as usize;
            let count = self.elem_order.iter().filter(|&&o| part.is_multiple_of(o as usize)).count();
            count == part
        })
    }

    pub fn is_pgroup(&self) -> bool {
        factorize(self.order as u64).len() == 1
    }

    /// `H_p(G)`, generated by the elements with `x^p != 1`.
    pub fn hughes_subgroup(&self, p: u64) -> Result<BitSet, GroupError> {
        if p < 2 || !(self.order as u64).is_multiple_of(p) || !crate::field::is_prime(p) {
            return Err(GroupError::PrimeNotDividing { p, order: self.order });
        }
        let gens: Vec<u32> = self.elements().filter(|&x| self.pow(x, p) != 0).collect();
        Ok(self.closure(&gens))
    }

    /// Primes `p` for which `G` is of Hughes-Thompson type.
    pub fn hughes_thompson_primes(&self) -> Vec<u64> {
        if self.is_pgroup() || self.order == 1 {
            return Vec::new();
        }
        factorize(self.order as u64)
            .into_iter()
            .map(|(p, _)| p)
            .filter(|&p| self.hughes_subgroup(p).map(|h| h.count() < self.order).unwrap_or(false))
            .collect()
    }

    /// Searches the lattice for a Frobenius complement and returns it with
    /// the kernel it determines.
    pub fn frobenius_witness(&self) -> Result<Option<FrobeniusWitness>, GroupError> {
        let lat = self.lattice()?;
        let n = self.order;
        for s in lat.subgroups() {
            let h = s.order();
            if h == 1 || h == n || !(n / h - 1).is_multiple_of(h) {
                continue;
            }
            if self.normalizer(s.members())?.count() != h {
                continue;
            }
            let conj = self.conjugates(s.members())?;
            let mut union = self.empty_set();
            for c in &conj {
                union.union_with(c);
            }
            // conjugates meet trivially iff their union has the full size
            if union.count() != conj.len() * (h - 1) + 1 {
                continue;
            }
            let mut kernel = self.full_set();
            kernel.difference_with(&union);
            kernel.insert(0);
            if kernel.count() * h == n
                && self.is_subgroup_set(&kernel)
                && self.is_normal_unchecked(&kernel)
                && kernel.intersection_count(s.members()) == 1
            {
                return Ok(Some(FrobeniusWitness { kernel, complement: s.members().clone() }));
            }
        }
        Ok(None)
    }

    fn looks_like_s4(&self) -> bool {
        self.order == 24 && self.order_histogram() == [(1, 1), (2, 9), (3, 8), (4, 6)]
    }

    /// Classifies `G` as partitionable by the first matching structural
    /// test, falling back to a solver search for any partition.
    pub fn is_partitionable(&self) -> Result<Partitionability, GroupError> {
        self.is_partitionable_with_budget(&SearchBudget::default())
    }

    pub fn is_partitionable_with_budget(&self, budget: &SearchBudget) -> Result<Partitionability, GroupError> {
        use Partitionability::Yes;
        if self.order == 1 {
            return Ok(Partitionability::No);
        }
        if self.looks_like_s4() {
            return Ok(Yes(PartitionClass::S4));
        }
        if self.is_pgroup() {
            let p = factorize(self.order as u64)[0].0;
            if self.hughes_subgroup(p)?.count() < self.order {
                return Ok(Yes(PartitionClass::PGroupProperHughes));
            }
        } else if !self.hughes_thompson_primes().is_empty() {
            return Ok(Yes(PartitionClass::HughesThompson));
        }
        let lattice_ok = self.order <= DEFAULT_LATTICE_GUARD;
        if lattice_ok && self.frobenius_witness()?.is_some() {
            return Ok(Yes(PartitionClass::Frobenius));
        }
        match self.origin() {
            Some(GroupSpec::Psl2(_)) => return Ok(Yes(PartitionClass::Psl2)),
            Some(GroupSpec::Pgl2(_)) => return Ok(Yes(PartitionClass::Pgl2)),
            Some(GroupSpec::Suzuki(_)) => return Ok(Yes(PartitionClass::Suzuki)),
            _ => {}
        }
        if !lattice_ok {
            return Err(GroupError::LatticeGuard { order: self.order, limit: DEFAULT_LATTICE_GUARD });
        }
        match solver::rho::partition_exists(self, budget)? {
            Some(true) => Ok(Yes(PartitionClass::Search)),
            Some(false) => Ok(Partitionability::No),
            None => Err(GroupError::Undecided("search budget exhausted".into())),
        }
    }
}
