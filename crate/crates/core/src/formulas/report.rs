//! σ and ρ for one specification, reconciled across formulas,
//! constructions and search.

use thiserror::Error;

use super::{main_theorem_predicate, rho_formula, sigma_formula, suzuki_parameter, suzuki_report, tomkinson_sigma};
use crate::bitset::BitSet;
use crate::constructions::{best_construction, ConstructionError};
use crate::group::{constructors, Group, GroupError, DEFAULT_LATTICE_GUARD};
use crate::solver::{self, rho_lower_bound, RhoValue, SearchBudget, SigmaValue, SolverError};
use crate::spec::{GroupSpec, SpecError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Formula(#[from] super::FormulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Formula,
    SolverExact,
    SolverInterval,
    ConstructionUpper,
}

impl Source {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Formula => "formula",
            Self::SolverExact => "solver-exact",
            Self::SolverInterval => "solver-interval",
            Self::ConstructionUpper => "construction-upper",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [Self::Formula, Self::SolverExact, Self::SolverInterval, Self::ConstructionUpper]
            .into_iter()
            .find(|s| s.tag() == tag)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SigmaEntry {
    Value(u128),
    Infinite,
    Interval { lower: u128, upper: u128 },
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhoEntry {
    Value(u128),
    NotPartitionable,
    Interval { lower: u128, upper: Option<u128> },
    Unknown,
}

impl SigmaEntry {
    pub fn value(self) -> Option<u128> {
        match self {
            Self::Value(v) => Some(v),
            _ => None,
        }
    }
}

impl RhoEntry {
    pub fn value(self) -> Option<u128> {
        match self {
            Self::Value(v) => Some(v),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportOptions {
    pub sigma: bool,
    pub rho: bool,
    pub budget: SearchBudget,
}

impl Default for ReportOptions {
    fn default() -> Self {
        Self { sigma: true, rho: true, budget: SearchBudget::default() }
    }
}

#[derive(Debug, Clone)]
pub struct SigmaRhoReport {
    pub spec: GroupSpec,
    pub order: u128,
    pub sigma: SigmaEntry,
    pub sigma_source: Option<Source>,
    pub rho: RhoEntry,
    pub rho_source: Option<Source>,
    /// Cover attaining `sigma`, as element sets of the constructed group.
    pub sigma_cert: Option<Vec<BitSet>>,
    /// Partition attaining `rho`, or its upper bound for an interval.
    pub rho_cert: Option<Vec<BitSet>>,
    /// Evidence from each method, one line each.
    pub notes: Vec<String>,
    /// Disagreements between methods. Any entry is a fatal inconsistency.
    pub mismatches: Vec<String>,
}

impl SigmaRhoReport {
    fn new(spec: GroupSpec, order: u128) -> Self {
        Self {
            spec,
            order,
            sigma: SigmaEntry::Unknown,
            sigma_source: None,
            rho: RhoEntry::Unknown,
            rho_source: None,
            sigma_cert: None,
            rho_cert: None,
            notes: Vec::new(),
            mismatches: Vec::new(),
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self.sigma, SigmaEntry::Interval { .. } | SigmaEntry::Unknown)
            && !matches!(self.rho, RhoEntry::Interval { .. } | RhoEntry::Unknown)
    }

    fn check_order(&mut self) {
        if let (Some(s), Some(r)) = (self.sigma.value(), self.rho.value()) {
            if s > r {
                self.mismatches.push(format!("sigma {s} exceeds rho {r}"));
            }
        }
        if let RhoEntry::Interval { lower, upper: Some(upper) } = self.rho {
            if lower > upper {
                self.mismatches.push(format!("rho interval [{lower}, {upper}] is empty"));
            }
        }
    }
}

/// Computes σ and ρ for `spec`, preferring closed forms, then
/// constructions for upper bounds, and the solver for exactness. Every
/// available method is run and compared.
pub fn compute_report(spec: &GroupSpec, opts: &ReportOptions) -> Result<SigmaRhoReport, ReportError> {
    spec.validate()?;
    if let GroupSpec::Suzuki(q) = *spec {
        return suzuki_only(spec, q, opts);
    }
    let g = constructors::build(spec)?;
    let mut rep = SigmaRhoReport::new(spec.clone(), g.order() as u128);
    if opts.sigma {
        sigma_part(&g, opts, &mut rep)?;
    }
    if opts.rho {
        rho_part(&g, opts, &mut rep)?;
    }
    rep.check_order();
    Ok(rep)
}

fn suzuki_only(spec: &GroupSpec, q: u64, opts: &ReportOptions) -> Result<SigmaRhoReport, ReportError> {
    let m = suzuki_parameter(q).ok_or(GroupError::SuzukiNotConstructible)?;
    let s = suzuki_report(m)?;
    let mut rep = SigmaRhoReport::new(spec.clone(), s.order);
    if opts.sigma {
        rep.sigma = SigmaEntry::Value(s.sigma);
        rep.sigma_source = Some(Source::Formula);
    }
    if opts.rho {
        rep.rho = RhoEntry::Interval { lower: s.rho_lower, upper: Some(s.psi_size) };
        rep.rho_source = Some(Source::ConstructionUpper);
        rep.notes.push(format!("rho: lower bound sigma + q^2 - 1 = {}, partition by conjugates of size {}", s.rho_lower, s.psi_size));
    }
    if !(s.torus_identity && s.partition_identity) {
        rep.mismatches.push("Suzuki cardinality identities fail".into());
    }
    rep.check_order();
    Ok(rep)
}

fn sigma_part(g: &Group, opts: &ReportOptions, rep: &mut SigmaRhoReport) -> Result<(), ReportError> {
    if g.is_cyclic() {
        rep.sigma = SigmaEntry::Infinite;
        rep.sigma_source = Some(Source::Formula);
        rep.notes.push("sigma: G is cyclic".into());
        return Ok(());
    }
    let lattice_ok = g.order() <= DEFAULT_LATTICE_GUARD;
    let formula = match sigma_formula(&rep.spec) {
        Some(v) => Some(v),
        None if lattice_ok && g.is_solvable() => Some(tomkinson_sigma(g)? as u128),
        None => None,
    };
    if let Some(f) = formula {
        rep.notes.push(format!("sigma: formula {f}"));
    }
    let solved = if lattice_ok { Some(solver::sigma(g, &opts.budget)?) } else { None };
    let mut cert = None;
    if let Some(out) = &solved {
        let sets = out.cert.as_ref().map(|c| c.sets(g)).transpose()?;
        match out.value {
            SigmaValue::Exact(v) => {
                rep.notes.push(format!("sigma: solver exact {v} ({} nodes)", out.nodes));
                if formula.is_some_and(|f| f != v as u128) {
                    rep.mismatches.push(format!("sigma formula {} but solver {v}", formula.unwrap()));
                }
            }
            SigmaValue::Interval { lower, upper } => {
                rep.notes.push(format!("sigma: solver interval [{lower}, {upper}] ({} nodes)", out.nodes));
                if formula.is_some_and(|f| f < lower as u128 || f > upper as u128) {
                    rep.mismatches.push(format!("sigma formula {} outside solver [{lower}, {upper}]", formula.unwrap()));
                }
            }
            SigmaValue::Infinite => {}
        }
        cert = sets.map(|s| (s.len() as u128, s));
    }
    match (formula, &solved) {
        (Some(f), _) => {
            rep.sigma = SigmaEntry::Value(f);
            rep.sigma_source = Some(Source::Formula);
            rep.sigma_cert = cert.filter(|c| c.0 == f).map(|c| c.1);
        }
        (None, Some(out)) => {
            match out.value {
                SigmaValue::Exact(v) => {
                    rep.sigma = SigmaEntry::Value(v as u128);
                    rep.sigma_source = Some(Source::SolverExact);
                }
                SigmaValue::Interval { lower, upper } => {
                    rep.sigma = SigmaEntry::Interval { lower: lower as u128, upper: upper as u128 };
                    rep.sigma_source = Some(Source::SolverInterval);
                }
                SigmaValue::Infinite => rep.sigma = SigmaEntry::Infinite,
            }
            rep.sigma_cert = cert.map(|c| c.1);
        }
        (None, None) => rep.notes.push("sigma: no formula and the lattice is too large".into()),
    }
    Ok(())
}

/// ρ from the structural results that apply to `g` itself.
fn structural_rho(g: &Group) -> Result<Option<(u128, &'static str)>, ReportError> {
    if g.order() > DEFAULT_LATTICE_GUARD {
        return Ok(None);
    }
    let frobenius = g.frobenius_witness()?;
    if frobenius.is_none() {
        if let Some(&p) = g.hughes_thompson_primes().first() {
            return Ok(Some((super::ht_rho(g, p)? as u128, "Hughes-Thompson, not Frobenius")));
        }
    }
    if let Some(w) = frobenius {
        if main_theorem_predicate(g)? && !g.is_pgroup() {
            return Ok(Some((w.kernel.count() as u128 + 1, "Frobenius, minimal normal kernel, cyclic complement")));
        }
    }
    Ok(None)
}

fn rho_part(g: &Group, opts: &ReportOptions, rep: &mut SigmaRhoReport) -> Result<(), ReportError> {
    let n = g.order();
    if g.is_cyclic() {
        rep.rho = RhoEntry::NotPartitionable;
        rep.rho_source = Some(Source::Formula);
        rep.notes.push("rho: G is cyclic, hence not partitionable".into());
        return Ok(());
    }
    let lattice_ok = n <= DEFAULT_LATTICE_GUARD;
    let formula = match rho_formula(&rep.spec) {
        Some(v) => Some(v),
        None => structural_rho(g)?.map(|(v, why)| {
            rep.notes.push(format!("rho: {why}"));
            v
        }),
    };
    if let Some(f) = formula {
        rep.notes.push(format!("rho: formula {f}"));
    }
    let construction = best_construction(g)?;
    if let Some(c) = &construction {
        rep.notes.push(format!("rho: construction of size {}", c.size()));
        if formula.is_some_and(|f| (c.size() as u128) < f) {
            rep.mismatches.push(format!("construction of size {} beats formula {}", c.size(), formula.unwrap()));
        }
    }
    let solved = if lattice_ok {
        let seed = construction.as_ref().map(|c| c.certificate()).transpose()?;
        Some(solver::rho_with_incumbent(g, &opts.budget, seed.as_ref())?)
    } else {
        None
    };
    let solver_sets = solved.as_ref().and_then(|o| o.cert.as_ref()).map(|c| c.sets(g)).transpose()?;
    if let Some(out) = &solved {
        match out.value {
            RhoValue::Exact(v) => {
                rep.notes.push(format!("rho: solver exact {v} ({} nodes)", out.nodes));
                if formula.is_some_and(|f| f != v as u128) {
                    rep.mismatches.push(format!("rho formula {} but solver {v}", formula.unwrap()));
                }
            }
            RhoValue::NotPartitionable => {
                rep.notes.push("rho: solver finds no partition".into());
                if formula.is_some() || construction.is_some() {
                    rep.mismatches.push("solver finds no partition but one is known".into());
                }
            }
            RhoValue::Interval { lower, upper } => {
                let shown = upper.map_or("?".to_string(), |u| u.to_string());
                rep.notes.push(format!("rho: solver interval [{lower}, {shown}] ({} nodes)", out.nodes));
                if formula.is_some_and(|f| f < lower as u128) {
                    rep.mismatches.push(format!("rho formula {} below solver lower bound {lower}", formula.unwrap()));
                }
            }
        }
    }
    let construction_sets = construction.map(|c| c.members);
    let pick = |size: u128| -> Option<Vec<BitSet>> {
        [&solver_sets, &construction_sets].into_iter().flatten().find(|s| s.len() as u128 == size).cloned()
    };
    if let Some(f) = formula {
        rep.rho = RhoEntry::Value(f);
        rep.rho_source = Some(Source::Formula);
        rep.rho_cert = pick(f);
        return Ok(());
    }
    let sqrt_lower = rho_lower_bound(n) as u128;
    let cupper = construction_sets.as_ref().map(|s| s.len() as u128);
    match solved.map(|o| o.value) {
        Some(RhoValue::Exact(v)) => {
            rep.rho = RhoEntry::Value(v as u128);
            rep.rho_source = Some(Source::SolverExact);
            rep.rho_cert = solver_sets;
        }
        Some(RhoValue::NotPartitionable) => {
            rep.rho = RhoEntry::NotPartitionable;
            rep.rho_source = Some(Source::SolverExact);
        }
        Some(RhoValue::Interval { lower, upper }) => {
            let supper = upper.map(|u| u as u128);
            let best = [supper, cupper].into_iter().flatten().min();
            rep.rho = RhoEntry::Interval { lower: sqrt_lower.max(lower as u128), upper: best };
            rep.rho_source =
                Some(if supper.is_some() && supper == best { Source::SolverInterval } else { Source::ConstructionUpper });
            rep.rho_cert = best.and_then(pick);
        }
        None => {
            if let Some(c) = cupper {
                rep.rho = RhoEntry::Interval { lower: sqrt_lower, upper: Some(c) };
                rep.rho_source = Some(Source::ConstructionUpper);
                rep.rho_cert = construction_sets;
            } else {
                rep.notes.push("rho: no formula, construction or feasible search".into());
            }
        }
    }
    Ok(())
}
