use proptest::prelude::*;

use particover_core::catalog::catalog;
use particover_core::constructions::{self, elementary_abelian_partition};
use particover_core::constructors::build;
use particover_core::solver::{
    self, rho_lower_bound, verify_cover, verify_partition, verify_partition_sets, PartitionCertificate, RhoValue,
    SearchBudget, SigmaValue,
};
use particover_core::{Group, GroupSpec};

fn noncyclic(max_order: u64) -> Vec<GroupSpec> {
    catalog(max_order).into_iter().filter(|s| !build(s).unwrap().is_cyclic()).collect()
}

fn any_group(max_order: u64) -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(catalog(max_order))
}

fn noncyclic_group(max_order: u64) -> impl Strategy<Value = GroupSpec> {
    prop::sample::select(noncyclic(max_order))
}

fn budget() -> SearchBudget {
    SearchBudget::sequential(30.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_axioms(spec in any_group(100), picks in prop::array::uniform3(any::<prop::sample::Index>())) {
        let g = build(&spec).unwrap();
        let [a, b, c] = picks.map(|i| i.index(g.order()) as u32);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
        prop_assert_eq!(g.mul(0, a), a);
        prop_assert_eq!(g.pow(a, g.element_order(a) as u64), 0);
    }

    #[test]
    fn lattice_closed_under_intersection(spec in any_group(64), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let g = build(&spec).unwrap();
        let lat = g.lattice().unwrap();
        let (h, k) = (lat.get(i.index(lat.len())), lat.get(j.index(lat.len())));
        let meet = h.members().intersection(k.members());
        prop_assert!(lat.index_of(&meet).is_some());
        prop_assert_eq!(g.order() % h.order(), 0);
    }

    #[test]
    fn rho_bounds_hold(spec in noncyclic_group(60)) {
        let g = build(&spec).unwrap();
        let n = g.order();
        let out = solver::rho(&g, &budget()).unwrap();
        match out.value {
            RhoValue::Exact(v) => {
                let cert = out.cert.as_ref().unwrap();
                prop_assert!(verify_partition(&g, cert).unwrap());
                prop_assert_eq!(cert.size(), v);
                prop_assert!(v >= rho_lower_bound(n));
                prop_assert!(v > cert.max_member_order(&g).unwrap());
                prop_assert!(v < n);
                prop_assert_eq!(v == n - 1, n == 4);
            }
            RhoValue::NotPartitionable => prop_assert!(out.cert.is_none()),
            RhoValue::Interval { .. } => prop_assert!(false, "{} inexact", spec),
        }
    }

    #[test]
    fn sigma_at_most_rho(spec in noncyclic_group(60)) {
        let g = build(&spec).unwrap();
        let s = solver::sigma(&g, &budget()).unwrap();
        prop_assert!(verify_cover(&g, s.cert.as_ref().unwrap()).unwrap());
        let SigmaValue::Exact(sigma) = s.value else {
            return Err(TestCaseError::fail("sigma inexact"));
        };
        prop_assert_eq!(s.cert.unwrap().size(), sigma);
        if let RhoValue::Exact(rho) = solver::rho(&g, &budget()).unwrap().value {
            prop_assert!(sigma <= rho);
        }
    }

    #[test]
    fn dropping_a_member_breaks_a_partition(spec in noncyclic_group(48), pick in any::<prop::sample::Index>()) {
        let g = build(&spec).unwrap();
        if let Some(cert) = solver::rho(&g, &budget()).unwrap().cert {
            let mut members = cert.members.clone();
            members.remove(pick.index(members.len()));
            let broken = PartitionCertificate { members };
            prop_assert!(!verify_partition(&g, &broken).unwrap());
        }
    }

    #[test]
    fn constructions_verify(spec in noncyclic_group(100)) {
        let g = build(&spec).unwrap();
        if let Some(c) = constructions::best_construction(&g).unwrap() {
            prop_assert!(verify_partition_sets(&g, &c.members));
            prop_assert!(c.size() >= rho_lower_bound(g.order()));
        }
    }

    #[test]
    fn elementary_abelian_partition_size((p, n) in prop::sample::select(vec![(2u64, 2u32), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2), (11, 2)])) {
        let c = elementary_abelian_partition(p, n).unwrap();
        prop_assert_eq!(c.size() as u64, 1 + p.pow(n.div_ceil(2)));
        prop_assert!(verify_partition_sets(&c.group, &c.members));
    }

    #[test]
    fn complement_counts_are_series_invariant(spec in any_group(60)) {
        let g: Group = build(&spec).unwrap();
        prop_assert!(g.complement_count_invariance_check().unwrap());
    }
}
