//! Minimum covers by maximal subgroups.
//!
//! A family covers `G` iff it contains a generator of every maximal cyclic
//! subgroup, so those are the items to cover.

use super::{CoverCertificate, Meter, SearchBudget, SolverError};
use crate::bitset::BitSet;
use crate::group::Group;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaValue {
    /// `G` is cyclic.
    Infinite,
    Exact(usize),
    Interval { lower: usize, upper: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaOutcome {
    pub value: SigmaValue,
    pub cert: Option<CoverCertificate>,
    pub nodes: u64,
}

impl SigmaOutcome {
    pub fn is_exact(&self) -> bool {
        !matches!(self.value, SigmaValue::Interval { .. })
    }

    pub fn exact_value(&self) -> Option<usize> {
        match self.value {
            SigmaValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

/// Smallest generator of each maximal cyclic subgroup, ascending.
pub(crate) fn maximal_cyclic_generators(g: &Group) -> Vec<u32> {
    let n = g.order();
    let mut dominated = vec![false; n];
    for y in g.elements() {
        let mut x = g.mul(y, y);
        while x != y && x != 0 {
            if g.element_order(x) < g.element_order(y) {
                dominated[x as usize] = true;
            }
            x = g.mul(x, y);
        }
    }
    let mut seen = g.empty_set();
    let mut out = Vec::new();
    for x in 1..n as u32 {
        if dominated[x as usize] || seen.contains(x as usize) {
            continue;
        }
        out.push(x);
        seen.union_with(&g.closure(&[x]));
    }
    out
}

struct Instance {
    nitems: usize,
    /// Items in each maximal subgroup.
    sets: Vec<BitSet>,
    /// Maximal subgroups containing each item.
    containing: Vec<BitSet>,
    /// Items by increasing number of containing sets.
    item_order: Vec<usize>,
}

impl Instance {
    fn clique(&self, uncovered: &BitSet) -> usize {
        let mut used = BitSet::new(self.sets.len());
        let mut size = 0;
        for &i in &self.item_order {
            if uncovered.contains(i) && self.containing[i].is_disjoint(&used) {
                used.union_with(&self.containing[i]);
                size += 1;
            }
        }
        size
    }

    fn lower_bound(&self, uncovered: &BitSet) -> usize {
        let left = uncovered.count();
        if left == 0 {
            return 0;
        }
        let best = self.sets.iter().map(|s| s.intersection_count(uncovered)).max().unwrap_or(0).max(1);
        left.div_ceil(best).max(self.clique(uncovered))
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = BitSet::full(self.nitems);
        let mut chosen = Vec::new();
        while !uncovered.is_empty() {
            let (i, _) = self
                .sets
                .iter()
                .enumerate()
                .map(|(i, s)| (i, s.intersection_count(&uncovered)))
                .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
            chosen.push(i);
            uncovered.difference_with(&self.sets[i]);
        }
        chosen
    }
}

struct Search<'a> {
    inst: &'a Instance,
    meter: &'a Meter,
    best: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self, uncovered: &mut BitSet, chosen: &mut Vec<usize>) {
        if !self.meter.tick() {
            return;
        }
        let Some(&item) = self.inst.item_order.iter().find(|&&i| uncovered.contains(i)) else {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return;
        };
        if chosen.len() + self.inst.lower_bound(uncovered) >= self.best.len() {
            return;
        }
        let mut options: Vec<(usize, usize)> =
            self.inst.containing[item].iter().map(|s| (s, self.inst.sets[s].intersection_count(uncovered))).collect();
        options.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (s, _) in options {
            let newly = self.inst.sets[s].intersection(uncovered);
            uncovered.difference_with(&newly);
            chosen.push(s);
            self.dfs(uncovered, chosen);
            chosen.pop();
            uncovered.union_with(&newly);
            if self.meter.exhausted() {
                return;
            }
        }
    }
}

/// Exact σ(G) with a certificate of maximal subgroups, or bounds if the
/// budget runs out. Always single-threaded.
pub fn sigma(g: &Group, budget: &SearchBudget) -> Result<SigmaOutcome, SolverError> {
    if g.is_cyclic() {
        return Ok(SigmaOutcome { value: SigmaValue::Infinite, cert: None, nodes: 0 });
    }
    let maximal = g.maximal_subgroups()?;
    let lat = g.lattice()?;
    let items = maximal_cyclic_generators(g);
    let sets: Vec<BitSet> = maximal
        .iter()
        .map(|&m| {
            let members = lat.get(m).members();
            BitSet::from_iter_with_len(items.len(), (0..items.len()).filter(|&i| members.contains(items[i] as usize)))
        })
        .collect();
    let mut containing = vec![BitSet::new(sets.len()); items.len()];
    for (s, set) in sets.iter().enumerate() {
        for i in set.iter() {
            containing[i].insert(s);
        }
    }
    let mut item_order: Vec<usize> = (0..items.len()).collect();
    item_order.sort_by_key(|&i| (containing[i].count(), i));
    let inst = Instance { nitems: items.len(), sets, containing, item_order };
    let meter = Meter::new(budget);
    let full = BitSet::full(inst.nitems);
    let lower = inst.lower_bound(&full);
    // the greedy cover is the incumbent; the search looks for smaller ones
    let mut search = Search { inst: &inst, meter: &meter, best: inst.greedy() };
    search.dfs(&mut full.clone(), &mut Vec::new());
    let best = search.best;
    let mut members: Vec<usize> = best.iter().map(|&s| maximal[s]).collect();
    members.sort_unstable();
    let size = members.len();
    let value = if meter.exhausted() && size > lower {
        SigmaValue::Interval { lower, upper: size }
    } else {
        SigmaValue::Exact(size)
    };
    Ok(SigmaOutcome { value, cert: Some(CoverCertificate { members }), nodes: meter.nodes() })
}
