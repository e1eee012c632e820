//! Finite groups as multiplication tables over canonical element IDs.
//!
//! A [`Group`] is built by breadth-first closure over an ordered generator
//! list: element IDs are handed out in the order words are first reached in
//! shortlex order, so the same generators always produce the same table.
//! ID 0 is the identity.

mod chief;
pub mod constructors;
mod lattice;
pub mod linear;
pub mod perm;
mod structure;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::field::FieldError;
use crate::spec::{GroupSpec, SpecError};

pub use chief::{ChiefFactor, ChiefSeries};
pub use lattice::{Lattice, Subgroup, DEFAULT_LATTICE_GUARD};
pub use structure::{FrobeniusWitness, PartitionClass, Partitionability};

/// Largest order for which a multiplication table is built.
pub const DEFAULT_ORDER_GUARD: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("generated group exceeds the order guard {limit}")]
    OrderExceeded { limit: usize },
    #[error("malformed generator: {0}")]
    MalformedGenerator(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("group of order {order} exceeds the lattice guard {limit}")]
    LatticeGuard { order: usize, limit: usize },
    #[error("the given set is not a subgroup")]
    NotSubgroup,
    #[error("the given subgroup is not normal")]
    NotNormal,
    #[error("the group is not solvable")]
    NotSolvable,
    #[error("{p} does not divide the group order {order}")]
    PrimeNotDividing { p: u64, order: usize },
    #[error("Suzuki groups are handled by formulas only and cannot be built element-wise")]
    SuzukiNotConstructible,
    #[error("partitionability undecided: {0}")]
    Undecided(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

/// A concrete multiplication rule that groups can be generated in.
pub trait ElementDomain {
    type Elem: Clone + Eq + Hash;

    fn identity(&self) -> Self::Elem;

    fn multiply(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn validate(&self, _e: &Self::Elem) -> Result<(), String> {
        Ok(())
    }
}

/// A group together with the concrete element behind every ID.
#[derive(Debug, Clone)]
pub struct Realized<E> {
    pub group: Group,
    pub elements: Vec<E>,
}

impl<E: Clone + Eq + Hash> Realized<E> {
    pub fn index(&self) -> HashMap<E, u32> {
        self.elements.iter().cloned().enumerate().map(|(i, e)| (e, i as u32)).collect()
    }
}

#[derive(Clone)]
pub struct Group {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    elem_order: Vec<u32>,
    generators: Vec<u32>,
    origin: Option<GroupSpec>,
    lattice: OnceLock<Lattice>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .field("origin", &self.origin.as_ref().map(|s| s.to_string()))
            .finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.mul == other.mul && self.generators == other.generators
    }
}

/// Builds the closure of `gens` with shortlex ID assignment.
pub fn build_from_generators<D: ElementDomain>(
    domain: &D,
    gens: &[D::Elem],
    max_order: usize,
) -> Result<Realized<D::Elem>, GroupError> {
    for g in gens {
        domain.validate(g).map_err(GroupError::MalformedGenerator)?;
    }
    let mut elements = vec![domain.identity()];
    let mut index: HashMap<D::Elem, u32> = HashMap::new();
    index.insert(domain.identity(), 0);
    // parent[j] = (i, k) with element j = element i * gens[k]
    let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
    let mut rmul: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (k, g) in gens.iter().enumerate() {
            let prod = domain.multiply(&elements[i], g);
            let id = match index.get(&prod) {
                Some(&id) => id,
                None => {
                    let id = elements.len() as u32;
                    if elements.len() >= max_order {
                        return Err(GroupError::OrderExceeded { limit: max_order });
                    }
                    index.insert(prod.clone(), id);
                    elements.push(prod);
                    parent.push((i as u32, k as u32));
                    queue.push_back(id as usize);
                    id
                }
            };
            rmul[k].push(id);
        }
    }
    let n = elements.len();
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        let row = &mut mul[i * n..(i + 1) * n];
        row[0] = i as u32;
        for j in 1..n {
            let (pj, k) = parent[j];
            row[j] = rmul[k as usize][row[pj as usize] as usize];
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    let group = Group::from_table_unchecked(n, mul, generators, None);
    Ok(Realized { group, elements })
}

impl Group {
    /// Wraps a complete Cayley table; IDs must already satisfy `0 = identity`.
    pub(crate) fn from_table_unchecked(
        order: usize,
        mul: Vec<u32>,
        generators: Vec<u32>,
        origin: Option<GroupSpec>,
    ) -> Self {
        let mut inv = vec![0u32; order];
        for (i, slot) in inv.iter_mut().enumerate() {
            let row = &mul[i * order..(i + 1) * order];
            *slot = row.iter().position(|&x| x == 0).expect("every element has an inverse") as u32;
        }
        let mut elem_order = vec![0u32; order];
        for (x, slot) in elem_order.iter_mut().enumerate() {
            let mut y = x as u32;
            let mut k = 1;
            while y != 0 {
                y = mul[y as usize * order + x];
                k += 1;
            }
            *slot = k;
        }
        Self { order, mul, inv, elem_order, generators, origin, lattice: OnceLock::new() }
    }

    pub fn trivial() -> Self {
        Self::from_table_unchecked(1, vec![0], Vec::new(), None)
    }

    pub fn with_origin(mut self, origin: GroupSpec) -> Self {
        self.origin = Some(origin);
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[u32] {
        &self.generators
    }

    pub fn origin(&self) -> Option<&GroupSpec> {
        self.origin.as_ref()
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    /// `g * h * g^-1`.
    #[inline]
    pub fn conj(&self, g: u32, h: u32) -> u32 {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        let e = e % self.elem_order[a as usize] as u64;
        (0..e).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: u32) -> u32 {
        self.elem_order[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn exponent(&self) -> u64 {
        self.elem_order.iter().fold(1u64, |acc, &o| lcm(acc, o as u64))
    }

    /// Number of elements of each order, sorted by order.
    pub fn order_histogram(&self) -> Vec<(u32, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for &o in &self.elem_order {
            *counts.entry(o).or_insert(0) += 1;
        }
        counts.into_iter().collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.order)
    }

    pub fn full_set(&self) -> BitSet {
        BitSet::full(self.order)
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[u32]) -> BitSet {
        let mut set = self.empty_set();
        set.insert(0);
        self.extend_closure(&mut set, &[0], gens);
        set
    }

    /// Closes `set` (already closed under `gens` restricted to `seed`'s
    /// orbit) under right multiplication by `gens`, starting from `seed`.
    fn extend_closure(&self, set: &mut BitSet, seed: &[u32], gens: &[u32]) {
        let mut stack: Vec<u32> = seed.to_vec();
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y as usize) {
                    stack.push(y);
                }
            }
        }
    }

    /// Subgroup generated by a subgroup `base` (with generators `base_gens`)
    /// and the extra elements `more`.
    pub fn join(&self, base: &BitSet, base_gens: &[u32], more: &[u32]) -> BitSet {
        let mut gens = base_gens.to_vec();
        gens.extend_from_slice(more);
        let mut set = base.clone();
        let seed: Vec<u32> = base.iter().map(|x| x as u32).collect();
        self.extend_closure(&mut set, &seed, &gens);
        set
    }

    /// A small generating set, chosen greedily in ID order.
    pub fn generating_set(&self, set: &BitSet) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut cur = self.closure(&[]);
        for x in set.iter() {
            if !cur.contains(x) {
                gens.push(x as u32);
                cur = self.join(&cur, &gens[..gens.len() - 1], &[x as u32]);
            }
        }
        gens
    }

    pub fn is_subgroup_set(&self, set: &BitSet) -> bool {
        set.capacity() == self.order && set.contains(0) && {
            let gens = self.generating_set(set);
            self.closure(&gens) == *set
        }
    }

    /// Builds the subgroup `set` as a group in its own right. Returns the
    /// group and the map from its IDs to IDs of `self`.
    pub fn subgroup_as_group(&self, set: &BitSet) -> Result<(Group, Vec<u32>), GroupError> {
        if !self.is_subgroup_set(set) {
            return Err(GroupError::NotSubgroup);
        }
        let gens = self.generating_set(set);
        let domain = TableDomain { group: self };
        let realized = build_from_generators(&domain, &gens, self.order)?;
        Ok((realized.group, realized.elements))
    }
}

pub(crate) struct TableDomain<'a> {
    pub group: &'a Group,
}

impl ElementDomain for TableDomain<'_> {
    type Elem = u32;

    fn identity(&self) -> u32 {
        0
    }

    fn multiply(&self, a: &u32, b: &u32) -> u32 {
        self.group.mul(*a, *b)
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
