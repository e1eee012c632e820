//! Minimum partitions as minimum exact covers of blocks.
//!
//! If `y != 1` is a power of `x`, the partition member containing `x` also
//! contains `y`, so `x` and `y` always share a member. Closing this relation
//! splits `G \ {1}` into blocks, and every partition member is a union of
//! blocks. The search picks members among the nontrivial proper subgroups
//! that are unions of blocks.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering::Relaxed};
use std::sync::Mutex;

use rayon::prelude::*;

use super::{verify_partition, Meter, PartitionCertificate, SearchBudget, SolverError};
use crate::bitset::BitSet;
use crate::group::{Group, GroupError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoValue {
    NotPartitionable,
    Exact(usize),
    /// Budget ran out. `upper` is the best partition found, if any.
    Interval { lower: usize, upper: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhoOutcome {
    pub value: RhoValue,
    pub cert: Option<PartitionCertificate>,
    pub nodes: u64,
}

impl RhoOutcome {
    pub fn is_exact(&self) -> bool {
        !matches!(self.value, RhoValue::Interval { .. })
    }

    /// The exact value, if the search completed and `G` is partitionable.
    pub fn exact_value(&self) -> Option<usize> {
        match self.value {
            RhoValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

/// `1 + ceil(sqrt(n))`, a lower bound for the size of any partition of a
/// group of order `n`.
pub fn rho_lower_bound(order: usize) -> usize {
    let mut r = (order as f64).sqrt() as usize;
    while r * r < order {
        r += 1;
    }
    while r > 0 && (r - 1) * (r - 1) >= order {
        r -= 1;
    }
    1 + r
}

struct Candidate {
    lattice: usize,
    order: usize,
    blocks: BitSet,
}

struct Instance {
    n: usize,
    nblocks: usize,
    /// Sorted by order descending, then lattice index.
    cands: Vec<Candidate>,
    /// Candidates containing each block, in candidate order.
    by_block: Vec<Vec<u32>>,
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Block index of every element (identity gets `u32::MAX`) and block count.
pub(crate) fn blocks(g: &Group) -> (Vec<u32>, usize) {
    let n = g.order();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    for x in 1..n as u32 {
        let mut y = g.mul(x, x);
        while y != 0 && y != x {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
            y = g.mul(y, x);
        }
    }
    let mut id = vec![u32::MAX; n];
    let mut root_id = vec![u32::MAX; n];
    let mut count = 0u32;
    for x in 1..n as u32 {
        let r = find(&mut parent, x) as usize;
        if root_id[r] == u32::MAX {
            root_id[r] = count;
            count += 1;
        }
        id[x as usize] = root_id[r];
    }
    (id, count as usize)
}

impl Instance {
    fn new(g: &Group) -> Result<Self, GroupError> {
        let lat = g.lattice()?;
        let n = g.order();
        let (block_of, nblocks) = blocks(g);
        let mut block_size = vec![0usize; nblocks];
        for x in 1..n {
            block_size[block_of[x] as usize] += 1;
        }
        let mut cands = Vec::new();
        for (i, s) in lat.iter().enumerate() {
            if s.order() == 1 || s.order() == n {
                continue;
            }
            let bs = BitSet::from_iter_with_len(nblocks, s.members().iter().skip(1).map(|x| block_of[x] as usize));
            let covered: usize = bs.iter().map(|b| block_size[b]).sum();
            if covered == s.order() - 1 {
                cands.push(Candidate { lattice: i, order: s.order(), blocks: bs });
            }
        }
        cands.sort_by(|a, b| b.order.cmp(&a.order).then(a.lattice.cmp(&b.lattice)));
        let mut by_block = vec![Vec::new(); nblocks];
        for (ci, c) in cands.iter().enumerate() {
            for b in c.blocks.iter() {
                by_block[b].push(ci as u32);
            }
        }
        Ok(Self { n, nblocks, cands, by_block })
    }

    /// Bound valid for every partition, independent of any incumbent.
    fn root_lower_bound(&self) -> usize {
        let maxw = self.cands.first().map_or(1, |c| c.order - 1);
        rho_lower_bound(self.n).max((self.n - 1).div_ceil(maxw))
    }
}

#[derive(Clone)]
struct Node {
    covered: BitSet,
    chosen: Vec<u32>,
    remaining: usize,
    max_order: usize,
}

struct Search<'a> {
    inst: &'a Instance,
    meter: &'a Meter,
    best: AtomicUsize,
    cert: Mutex<Option<Vec<u32>>>,
    first_only: bool,
    found: AtomicBool,
    /// When set, nodes at this depth are queued instead of expanded.
    split: Option<(usize, Mutex<Vec<Node>>)>,
}

impl Search<'_> {
    fn stop(&self) -> bool {
        self.meter.exhausted() || (self.first_only && self.found.load(Relaxed))
    }

    fn record(&self, chosen: &[u32]) {
        let mut guard = self.cert.lock().expect("cert lock");
        if chosen.len() < self.best.load(Relaxed) {
            *guard = Some(chosen.to_vec());
            self.best.store(chosen.len(), Relaxed);
        }
        self.found.store(true, Relaxed);
    }

    fn cap(&self, best: usize, max_order: usize) -> usize {
        let by_best = best.saturating_sub(2);
        self.inst.n.checked_div(max_order).map_or(by_best, |c| by_best.min(c))
    }

    fn compatible(&self, c: &Candidate, covered: &BitSet, cap: usize) -> bool {
        c.order <= cap && c.blocks.is_disjoint(covered)
    }

    fn dfs(&self, node: &mut Node) {
        if self.stop() || !self.meter.tick() {
            return;
        }
        if node.remaining == 0 {
            self.record(&node.chosen);
            return;
        }
        if let Some((depth, queue)) = &self.split {
            if node.chosen.len() == *depth {
                queue.lock().expect("queue lock").push(node.clone());
                return;
            }
        }
        let best = self.best.load(Relaxed);
        let chosen = node.chosen.len();
        if node.max_order > 0 && 1 + node.max_order >= best {
            return;
        }
        let cap = self.cap(best, node.max_order);
        let Some(top) = self.inst.cands.iter().find(|c| self.compatible(c, &node.covered, cap)) else {
            return;
        };
        if chosen + node.remaining.div_ceil(top.order - 1) >= best {
            return;
        }
        // most constrained uncovered block
        let mut pick: Option<(usize, usize)> = None;
        for b in 0..self.inst.nblocks {
            if node.covered.contains(b) {
                continue;
            }
            let count = self.inst.by_block[b]
                .iter()
                .filter(|&&ci| self.compatible(&self.inst.cands[ci as usize], &node.covered, cap))
                .count();
            if count == 0 {
                return;
            }
            if pick.is_none_or(|(_, c)| count < c) {
                pick = Some((b, count));
                if count == 1 {
                    break;
                }
            }
        }
        let (block, _) = pick.expect("an uncovered block exists while elements remain");
        for &ci in &self.inst.by_block[block] {
            let c = &self.inst.cands[ci as usize];
            let cap = self.cap(self.best.load(Relaxed), node.max_order);
            if !self.compatible(c, &node.covered, cap) {
                continue;
            }
            node.covered.union_with(&c.blocks);
            node.chosen.push(ci);
            let saved = node.max_order;
            node.remaining -= c.order - 1;
            node.max_order = saved.max(c.order);
            self.dfs(node);
            node.max_order = saved;
            node.remaining += c.order - 1;
            node.chosen.pop();
            node.covered.difference_with(&c.blocks);
            if self.stop() {
                return;
            }
        }
    }
}

fn run(inst: &Instance, budget: &SearchBudget, incumbent: Option<Vec<u32>>, first_only: bool) -> (Option<Vec<u32>>, bool, u64) {
    let meter = Meter::new(budget);
    let best = incumbent.as_ref().map_or(inst.n, Vec::len);
    let root = Node { covered: BitSet::new(inst.nblocks), chosen: Vec::new(), remaining: inst.n - 1, max_order: 0 };
    let parallel = budget.threads > 1 && !first_only;
    let mut search = Search {
        inst,
        meter: &meter,
        best: AtomicUsize::new(best),
        cert: Mutex::new(incumbent),
        first_only,
        found: AtomicBool::new(false),
        split: parallel.then(|| (2, Mutex::new(Vec::new()))),
    };
    search.dfs(&mut root.clone());
    if let Some((_, queue)) = search.split.take() {
        let tasks = queue.into_inner().expect("queue lock");
        let pool = rayon::ThreadPoolBuilder::new().num_threads(budget.threads).build();
        let work = |s: &Search<'_>| tasks.par_iter().for_each(|t| s.dfs(&mut t.clone()));
        match pool {
            Ok(pool) => pool.install(|| work(&search)),
            Err(_) => work(&search),
        }
    }
    let cert = search.cert.into_inner().expect("cert lock");
    (cert, meter.exhausted(), meter.nodes())
}

fn to_certificate(inst: &Instance, chosen: &[u32]) -> PartitionCertificate {
    let mut members: Vec<usize> = chosen.iter().map(|&ci| inst.cands[ci as usize].lattice).collect();
    members.sort_unstable();
    PartitionCertificate { members }
}

/// Exact ρ(G) with a certificate, or bounds if the budget runs out.
pub fn rho(g: &Group, budget: &SearchBudget) -> Result<RhoOutcome, SolverError> {
    rho_with_incumbent(g, budget, None)
}

/// As [`rho`], starting from a known partition (for example a
/// construction), which must verify.
pub fn rho_with_incumbent(
    g: &Group,
    budget: &SearchBudget,
    incumbent: Option<&PartitionCertificate>,
) -> Result<RhoOutcome, SolverError> {
    let inst = Instance::new(g)?;
    let seed = match incumbent {
        Some(cert) => {
            if !verify_partition(g, cert)? {
                return Err(SolverError::Group(GroupError::InvalidParameters("incumbent is not a partition".into())));
            }
            let pos: Vec<u32> = cert
                .members
                .iter()
                .map(|&m| inst.cands.iter().position(|c| c.lattice == m).expect("partition members are unions of blocks") as u32)
                .collect();
            Some(pos)
        }
        None => None,
    };
    let lower = inst.root_lower_bound();
    let coverable = inst.by_block.iter().all(|v| !v.is_empty());
    let (cert, exhausted, nodes) =
        if coverable { run(&inst, budget, seed, false) } else { (None, false, 0) };
    let upper = cert.as_ref().map(Vec::len);
    let value = match (exhausted, upper) {
        (false, Some(v)) => RhoValue::Exact(v),
        (false, None) => RhoValue::NotPartitionable,
        (true, Some(v)) if v <= lower => RhoValue::Exact(v),
        (true, upper) => RhoValue::Interval { lower: upper.map_or(lower, |u| lower.min(u)), upper },
    };
    Ok(RhoOutcome { value, cert: cert.map(|c| to_certificate(&inst, &c)), nodes })
}

/// Whether any partition exists: `None` if the budget ran out first.
pub fn partition_exists(g: &Group, budget: &SearchBudget) -> Result<Option<bool>, GroupError> {
    let inst = Instance::new(g)?;
    if inst.by_block.iter().any(Vec::is_empty) {
        return Ok(Some(false));
    }
    let (cert, exhausted, _) = run(&inst, budget, None, true);
    Ok(match (cert, exhausted) {
        (Some(_), _) => Some(true),
        (None, false) => Some(false),
        (None, true) => None,
    })
}
