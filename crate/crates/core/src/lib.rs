//! Minimal covers and partitions of small finite groups.
//!
//! Groups are built as multiplication tables from generators, their
//! subgroup lattices are enumerated, and σ(G) (fewest proper subgroups
//! covering `G`) and ρ(G) (fewest subgroups partitioning `G`) are computed
//! by exact search, by closed formulas, and by explicit constructions.

pub mod bitset;
pub mod catalog;
pub mod constructions;
pub mod field;
pub mod formulas;
pub mod group;
pub mod solver;
pub mod spec;

pub use bitset::BitSet;
pub use group::{constructors, Group, GroupError, PartitionClass, Partitionability};
pub use spec::{parse_spec, GroupSpec, SpecError};
