//! Exact minimum covers (σ) and partitions (ρ) with certificates.

mod certificate;
pub mod rho;
pub mod sigma;

use std::time::{Duration, Instant};

use thiserror::Error;

use crate::group::GroupError;

pub use certificate::{
    verify_cover, verify_cover_sets, verify_partition, verify_partition_sets, CoverCertificate, PartitionCertificate,
};
pub use rho::{rho, rho_lower_bound, rho_with_incumbent, RhoOutcome, RhoValue};
pub use sigma::{sigma, SigmaOutcome, SigmaValue};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("subgroup index {0} is out of range")]
    InvalidIndex(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Limits for one search.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_seconds: f64,
    /// 1 runs the deterministic single-threaded search.
    pub threads: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        Self {
            max_nodes: u64::MAX,
            max_seconds: 60.0,
            threads: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
        }
    }
}

impl SearchBudget {
    pub fn sequential(max_seconds: f64) -> Self {
        Self { max_nodes: u64::MAX, max_seconds, threads: 1 }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self { max_nodes, max_seconds: f64::INFINITY, threads: 1 }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }
}

/// Shared node/time accounting. Checked every few nodes.
pub(crate) struct Meter {
    start: Instant,
    limit: Option<Duration>,
    max_nodes: u64,
    nodes: std::sync::atomic::AtomicU64,
    exhausted: std::sync::atomic::AtomicBool,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        let limit = (budget.max_seconds.is_finite() && budget.max_seconds >= 0.0)
            .then(|| Duration::from_secs_f64(budget.max_seconds));
        Self {
            start: Instant::now(),
            limit,
            max_nodes: budget.max_nodes,
            nodes: 0.into(),
            exhausted: false.into(),
        }
    }

    /// Counts one node; returns false once the budget is spent.
    pub(crate) fn tick(&self) -> bool {
        use std::sync::atomic::Ordering::Relaxed;
        if self.exhausted.load(Relaxed) {
            return false;
        }
        let n = self.nodes.fetch_add(1, Relaxed) + 1;
        let over = n > self.max_nodes || (n.is_multiple_of(256) && self.limit.is_some_and(|l| self.start.elapsed() > l));
        if over {
            self.exhausted.store(true, Relaxed);
        }
        !over
    }

    pub(crate) fn exhausted(&self) -> bool {
        self.exhausted.load(std::sync::atomic::Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(std::sync::atomic::Ordering::Relaxed)
    }
}
