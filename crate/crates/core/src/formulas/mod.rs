//! Closed-form values of σ and ρ, the Suzuki arithmetic, and the
//! characterization of groups with σ = ρ.

pub mod report;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::field::{factorize, prime_power};
use crate::group::{Group, GroupError};
use crate::solver::{RhoValue, SearchBudget, SolverError};
use crate::spec::GroupSpec;

pub use report::{compute_report, ReportError, ReportOptions, RhoEntry, SigmaEntry, SigmaRhoReport, Source};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("G is cyclic, so σ(G) is infinite")]
    Cyclic,
    #[error("hypotheses fail: {0}")]
    NotApplicable(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

fn not_applicable<T>(msg: impl Into<String>) -> Result<T, FormulaError> {
    Err(FormulaError::NotApplicable(msg.into()))
}

/// σ of a solvable noncyclic group: `q + 1` for the smallest chief factor
/// order `q` with at least two complements.
pub fn tomkinson_sigma(g: &Group) -> Result<usize, FormulaError> {
    if g.is_cyclic() {
        return Err(FormulaError::Cyclic);
    }
    if !g.is_solvable() {
        return Err(GroupError::NotSolvable.into());
    }
    g.chief_series()?
        .factors
        .iter()
        .filter(|f| f.complements >= 2)
        .map(|f| f.order + 1)
        .min()
        .ok_or_else(|| FormulaError::Inconsistent("no chief factor has two complements".into()))
}

/// σ of a nilpotent noncyclic group: `p + 1` for the smallest prime whose
/// Sylow subgroup is noncyclic.
pub fn nilpotent_sigma(g: &Group) -> Result<usize, FormulaError> {
    if g.is_cyclic() {
        return Err(FormulaError::Cyclic);
    }
    if !g.is_nilpotent() {
        return not_applicable("G is not nilpotent");
    }
    for (p, e) in factorize(g.order() as u64) {
        let part = p.pow(e) as u32;
        // the Sylow subgroup is cyclic iff it has an element of full order
        if !g.elements().any(|x| g.element_order(x) == part) {
            return Ok(p as usize + 1);
        }
    }
    Err(FormulaError::Inconsistent("every Sylow subgroup is cyclic".into()))
}

/// σ(PSL2(q)) for `q >= 4` and σ(PGL2(q)) for odd `q >= 5`.
pub fn sigma_psl_formula(q: u64, variant: crate::constructions::LinearVariant) -> Result<u64, FormulaError> {
    use crate::constructions::LinearVariant::*;
    if prime_power(q).is_none() {
        return not_applicable(format!("{q} is not a prime power"));
    }
    let generic = q * (q + 1) / 2 + q % 2;
    match variant {
        Psl if q < 4 => not_applicable("PSL2(q) needs q >= 4"),
        Psl => Ok(match q {
            5 => 10,
            7 => 15,
            9 => 16,
            _ => generic,
        }),
        Pgl if q < 5 || q.is_multiple_of(2) => not_applicable("PGL2(q) needs odd q >= 5"),
        Pgl => Ok(generic),
    }
}

/// σ by specification tag, where a closed form is known.
pub fn sigma_formula(spec: &GroupSpec) -> Option<u128> {
    use crate::constructions::LinearVariant::*;
    match *spec {
        GroupSpec::ElementaryAbelian { p, n } if n >= 2 => Some(p as u128 + 1),
        GroupSpec::Psl2(q) if q >= 4 => sigma_psl_formula(q, Psl).ok().map(u128::from),
        GroupSpec::Pgl2(q) if q >= 4 && q % 2 == 0 => sigma_psl_formula(q, Psl).ok().map(u128::from),
        GroupSpec::Pgl2(q) if q >= 5 => sigma_psl_formula(q, Pgl).ok().map(u128::from),
        GroupSpec::Pgl2(3) | GroupSpec::Symmetric(4) | GroupSpec::Symmetric(3) | GroupSpec::Dihedral(6) => Some(4),
        GroupSpec::Psl2(2) | GroupSpec::Pgl2(2) => Some(4),
        GroupSpec::Psl2(3) | GroupSpec::Alternating(4) => Some(5),
        GroupSpec::Alternating(5) => Some(10),
        GroupSpec::Alternating(6) => Some(16),
        GroupSpec::Symmetric(5) => Some(16),
        GroupSpec::Suzuki(q) => {
            let q = q as u128;
            Some(q * q * (q * q + 1) / 2)
        }
        _ => None,
    }
}

/// Whether `d` generates `GF(q)` over its prime field as a multiplicative
/// order, i.e. `d` divides no `p^k - 1` for a proper divisor `k` of `f`.
fn order_generates_field(p: u64, f: u32, d: u64) -> bool {
    (1..f).filter(|k| f.is_multiple_of(*k)).all(|k| (p.pow(k) - 1) % d != 0)
}

/// ρ by specification tag; `None` where no closed form applies.
pub fn rho_formula(spec: &GroupSpec) -> Option<u128> {
    let sq = |q: u64| q as u128 * q as u128 + 1;
    match *spec {
        GroupSpec::ElementaryAbelian { p, n } if n >= 2 => Some(1 + (p as u128).pow(n.div_ceil(2))),
        GroupSpec::Pgl2(2) | GroupSpec::Psl2(2) | GroupSpec::Symmetric(3) => Some(4),
        GroupSpec::Pgl2(q) if q >= 3 => Some(sq(q)),
        GroupSpec::Psl2(3) | GroupSpec::Alternating(4) => Some(5),
        GroupSpec::Psl2(5) | GroupSpec::Alternating(5) => Some(17),
        GroupSpec::Psl2(q) if q >= 7 || (q >= 4 && q % 2 == 0) => Some(sq(q)),
        GroupSpec::Symmetric(4) => Some(10),
        GroupSpec::Symmetric(5) => Some(26),
        GroupSpec::Alternating(6) => Some(82),
        GroupSpec::Dihedral(m) if m >= 4 => Some(m as u128 / 2 + 1),
        GroupSpec::Agl1 { q, d } => {
            let (p, f) = prime_power(q)?;
            order_generates_field(p, f, d).then_some(q as u128 + 1)
        }
        GroupSpec::DirectProduct(ref fs) => {
            // a product of elementary abelian p-groups for one prime p
            let mut prime = None;
            let mut rank = 0;
            for f in fs {
                let (p, n) = match *f {
                    GroupSpec::ElementaryAbelian { p, n } => (p, n),
                    GroupSpec::Cyclic(c) if crate::field::is_prime(c) => (c, 1),
                    _ => return None,
                };
                if prime.is_some_and(|q| q != p) {
                    return None;
                }
                prime = Some(p);
                rank += n;
            }
            rho_formula(&GroupSpec::ElementaryAbelian { p: prime?, n: rank })
        }
        _ => None,
    }
}

/// `|H_p(G)| + 1` for `G` of Hughes-Thompson type relative to `p` and not
/// a Frobenius group.
pub fn ht_rho(g: &Group, p: u64) -> Result<usize, FormulaError> {
    if g.is_pgroup() {
        return not_applicable("G is a p-group");
    }
    let h = g.hughes_subgroup(p)?;
    if h.count() == g.order() {
        return not_applicable(format!("H_{p}(G) = G"));
    }
    if g.frobenius_witness()?.is_some() {
        return not_applicable("G is a Frobenius group");
    }
    Ok(h.count() + 1)
}

fn is_minimal_normal(g: &Group, k: &BitSet) -> Result<bool, GroupError> {
    let lat = g.lattice()?;
    Ok(g.normal_subgroups()?.into_iter().map(|i| lat.get(i).members()).all(|n| {
        let c = n.count();
        c == 1 || c >= k.count() || !n.is_subset(k)
    }))
}

/// Whether `g` is `C_p x C_p`, or Frobenius with abelian minimal normal
/// kernel and cyclic complement: exactly the groups with σ = ρ.
pub fn main_theorem_predicate(g: &Group) -> Result<bool, FormulaError> {
    if g.is_partitionable()? == crate::group::Partitionability::No {
        return not_applicable("G is not partitionable");
    }
    let n = g.order();
    if let [(p, 2)] = factorize(n as u64)[..] {
        if g.exponent() == p {
            return Ok(true);
        }
    }
    let Some(w) = g.frobenius_witness()? else {
        return Ok(false);
    };
    let (kernel, _) = g.subgroup_as_group(&w.kernel)?;
    let (complement, _) = g.subgroup_as_group(&w.complement)?;
    Ok(kernel.is_abelian() && complement.is_cyclic() && is_minimal_normal(g, &w.kernel)?)
}

/// Both sides of the question whether a Frobenius group with kernel `K`
/// always has ρ = |K| + 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusKernelData {
    pub kernel_order: usize,
    pub complement_order: usize,
    pub kernel_minimal_normal: bool,
    pub complement_cyclic: bool,
    pub rho: RhoValue,
}

impl FrobeniusKernelData {
    /// `None` while ρ is only bracketed and the bracket contains `|K| + 1`.
    pub fn agrees(&self) -> Option<bool> {
        let target = self.kernel_order + 1;
        match self.rho {
            RhoValue::Exact(v) => Some(v == target),
            RhoValue::Interval { lower, upper } => {
                if target < lower || upper.is_some_and(|u| u < target) {
                    Some(false)
                } else {
                    None
                }
            }
            RhoValue::NotPartitionable => Some(false),
        }
    }
}

/// `None` if `g` is not a Frobenius group.
pub fn frobenius_kernel_data(g: &Group, budget: &SearchBudget) -> Result<Option<FrobeniusKernelData>, FormulaError> {
    let Some(w) = g.frobenius_witness()? else {
        return Ok(None);
    };
    let (complement, _) = g.subgroup_as_group(&w.complement)?;
    Ok(Some(FrobeniusKernelData {
        kernel_order: w.kernel.count(),
        complement_order: w.complement.count(),
        kernel_minimal_normal: is_minimal_normal(g, &w.kernel)?,
        complement_cyclic: complement.is_cyclic(),
        rho: crate::solver::rho(g, budget)?.value,
    }))
}

/// Arithmetic for `Sz(q)`, `q = 2^(2m+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuzukiReport {
    pub m: u32,
    pub q: u128,
    pub r: u128,
    pub order: u128,
    pub sigma: u128,
    /// Size of the partition by conjugates of a Sylow 2-subgroup, the
    /// cyclic subgroup of order `q - 1`, and the two tori.
    pub psi_size: u128,
    pub rho_lower: u128,
    /// `(q + r + 1)(q - r + 1) = q^2 + 1`.
    pub torus_identity: bool,
    /// Nonidentity elements of the members add up to `|G| - 1`.
    pub partition_identity: bool,
}

pub fn suzuki_report(m: u32) -> Result<SuzukiReport, FormulaError> {
    if !(1..=12).contains(&m) {
        return not_applicable(format!("m = {m}, expected 1..=12"));
    }
    let q: u128 = 1 << (2 * m + 1);
    let r: u128 = 1 << (m + 1);
    let q2 = q * q;
    let order = q2 * (q - 1) * (q2 + 1);
    let sigma = q2 * (q2 + 1) / 2;
    let (t1, t2) = (q + r + 1, q - r + 1);
    let conj_u = q2 + 1;
    let conj_h = order / (2 * (q - 1));
    let conj_t1 = order / (4 * t1);
    let conj_t2 = order / (4 * t2);
    let psi_size = conj_u + conj_h + conj_t1 + conj_t2;
    let covered = (q2 - 1) * conj_u + (q - 2) * conj_h + (t1 - 1) * conj_t1 + (t2 - 1) * conj_t2 + 1;
    Ok(SuzukiReport {
        m,
        q,
        r,
        order,
        sigma,
        psi_size,
        rho_lower: sigma + q2 - 1,
        torus_identity: t1 * t2 == q2 + 1,
        partition_identity: covered == order,
    })
}

/// `m` with `2^(2m+1) = q`, if any.
pub fn suzuki_parameter(q: u64) -> Option<u32> {
    let e = q.checked_ilog2()?;
    (q.is_power_of_two() && e % 2 == 1 && e >= 3).then_some((e - 1) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::LinearVariant::*;
    use crate::group::constructors::*;

    #[test]
    fn tomkinson_examples() {
        assert_eq!(tomkinson_sigma(&elementary_abelian(3, 2).unwrap()), Ok(4));
        assert_eq!(tomkinson_sigma(&symmetric(4).unwrap()), Ok(4));
        // D12 maps onto C2 x C2
        let d12 = dihedral(12).unwrap();
        assert_eq!(tomkinson_sigma(&d12), Ok(3));
        let solved = crate::solver::sigma(&d12, &crate::solver::SearchBudget::sequential(60.0)).unwrap();
        assert_eq!(solved.exact_value(), Some(3));
        assert_eq!(tomkinson_sigma(&cyclic(6).unwrap()), Err(FormulaError::Cyclic));
        assert!(matches!(tomkinson_sigma(&alternating(5).unwrap()), Err(FormulaError::Group(GroupError::NotSolvable))));
    }

    #[test]
    fn nilpotent_examples() {
        assert_eq!(nilpotent_sigma(&elementary_abelian(2, 3).unwrap()), Ok(3));
        let g = direct_product(&cyclic(4).unwrap(), &elementary_abelian(3, 2).unwrap()).unwrap();
        assert_eq!(nilpotent_sigma(&g), Ok(4));
        assert_eq!(nilpotent_sigma(&elementary_abelian(5, 2).unwrap()), Ok(6));
        assert!(nilpotent_sigma(&symmetric(3).unwrap()).is_err());
    }

    #[test]
    fn linear_sigma() {
        assert_eq!(sigma_psl_formula(7, Psl), Ok(15));
        assert_eq!(sigma_psl_formula(8, Psl), Ok(36));
        assert_eq!(sigma_psl_formula(7, Pgl), Ok(29));
        assert_eq!(sigma_psl_formula(11, Psl), Ok(67));
        assert!(sigma_psl_formula(3, Psl).is_err());
        assert!(sigma_psl_formula(8, Pgl).is_err());
        assert!(sigma_psl_formula(6, Psl).is_err());
    }

    #[test]
    fn rho_by_tag() {
        let f = |s: &str| rho_formula(&crate::parse_spec(s).unwrap());
        assert_eq!(f("PGL2(3)"), Some(10));
        assert_eq!(f("C3^4"), Some(10));
        assert_eq!(f("PSL2(11)"), Some(122));
        assert_eq!(f("PSL2(4)"), Some(17));
        assert_eq!(f("D12"), Some(7));
        assert_eq!(f("AGL1(7,3)"), Some(8));
        // -1 lies in GF(3), so the kernel of AGL1(9,2) is not minimal normal
        assert_eq!(f("AGL1(9,2)"), None);
        assert_eq!(f("AGL1(9,4)"), Some(10));
        assert_eq!(f("C2 x C2 x C2"), Some(5));
        assert_eq!(f("C2 x C3"), None);
        assert_eq!(f("C12"), None);
    }

    #[test]
    fn hughes_thompson_rho() {
        assert_eq!(ht_rho(&dihedral(12).unwrap(), 2), Ok(7));
        assert_eq!(ht_rho(&dihedral(30).unwrap(), 2), Err(FormulaError::NotApplicable("G is a Frobenius group".into())));
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(3).unwrap()).unwrap();
        assert!(ht_rho(&g, 2).is_err());
        assert!(ht_rho(&g, 3).is_err());
    }

    #[test]
    fn main_theorem_examples() {
        assert_eq!(main_theorem_predicate(&elementary_abelian(5, 2).unwrap()), Ok(true));
        assert_eq!(main_theorem_predicate(&agl1_frobenius(7, 3).unwrap()), Ok(true));
        assert_eq!(main_theorem_predicate(&symmetric(4).unwrap()), Ok(false));
        assert_eq!(main_theorem_predicate(&elementary_abelian(2, 3).unwrap()), Ok(false));
        assert!(main_theorem_predicate(&cyclic(4).unwrap()).is_err());
    }

    #[test]
    fn frobenius_question_data() {
        let budget = SearchBudget::sequential(30.0);
        let d = frobenius_kernel_data(&agl1_frobenius(7, 3).unwrap(), &budget).unwrap().unwrap();
        assert_eq!(d.agrees(), Some(true));
        assert!(frobenius_kernel_data(&dihedral(12).unwrap(), &budget).unwrap().is_none());
        // kernel C3^3 is not minimal normal; an explicit 10-member partition exists
        let d = frobenius_kernel_data(&agl1_frobenius(27, 2).unwrap(), &budget).unwrap().unwrap();
        assert!(!d.kernel_minimal_normal);
        assert_eq!((d.kernel_order, d.rho), (27, RhoValue::Exact(10)));
        assert_eq!(d.agrees(), Some(false));
    }

    #[test]
    fn suzuki_q8() {
        let r = suzuki_report(1).unwrap();
        assert_eq!((r.q, r.r, r.order), (8, 4, 29120));
        assert_eq!(r.sigma, 2080);
        assert_eq!(r.rho_lower, 2143);
        assert_eq!(r.psi_size, 65 + 2080 + 560 + 1456);
        assert!(r.torus_identity && r.partition_identity);
        assert_eq!(suzuki_parameter(8), Some(1));
        assert_eq!(suzuki_parameter(32), Some(2));
        assert_eq!(suzuki_parameter(16), None);
    }
}
