//! The test catalog: small groups from the constructed families and their
//! pairwise direct products.

use crate::field::{is_prime, prime_power};
use crate::spec::GroupSpec;

/// Base groups of order between 2 and `max_order`.
pub fn base_groups(max_order: u64) -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (2..=max_order).map(GroupSpec::Cyclic).collect();
    for p in (2..=max_order).filter(|&p| is_prime(p)) {
        let mut n = 2;
        while p.pow(n) <= max_order {
            out.push(GroupSpec::ElementaryAbelian { p, n });
            n += 1;
        }
    }
    out.extend((4..=max_order).step_by(2).map(GroupSpec::Dihedral));
    for (spec, order) in [(GroupSpec::Symmetric(3), 6), (GroupSpec::Symmetric(4), 24), (GroupSpec::Alternating(4), 12)] {
        if order <= max_order {
            out.push(spec);
        }
    }
    for q in (3..=max_order / 2).filter(|&q| prime_power(q).is_some()) {
        for d in (2..q).filter(|&d| (q - 1) % d == 0 && q * d <= max_order) {
            out.push(GroupSpec::Agl1 { q, d });
        }
    }
    out
}

/// Base groups and their unordered pairwise direct products, all of order
/// at most `max_order`.
pub fn catalog(max_order: u64) -> Vec<GroupSpec> {
    let base = base_groups(max_order);
    let orders: Vec<u64> = base.iter().map(|s| s.order().expect("small") as u64).collect();
    let mut out = base.clone();
    for i in 0..base.len() {
        for j in i..base.len() {
            if orders[i] * orders[j] <= max_order {
                out.push(GroupSpec::product(base[i].clone(), base[j].clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_catalog() {
        let c = catalog(8);
        let names: Vec<String> = c.iter().map(ToString::to_string).collect();
        for want in ["C8", "C2^3", "D8", "S3", "C2 x C4", "C2 x C2", "C2 x C2^2", "AGL1(3,2)", "C2 x D4"] {
            assert!(names.iter().any(|n| n == want), "{want} missing");
        }
        assert!(c.iter().all(|s| s.order().unwrap() <= 8 && s.validate().is_ok()));
        assert!(!names.iter().any(|n| n == "C1"));
    }

    #[test]
    fn agl_entries() {
        let b = base_groups(100);
        assert!(b.contains(&GroupSpec::Agl1 { q: 9, d: 8 }));
        assert!(b.contains(&GroupSpec::Agl1 { q: 49, d: 2 }));
        assert!(!b.contains(&GroupSpec::Agl1 { q: 11, d: 10 }));
    }
}
