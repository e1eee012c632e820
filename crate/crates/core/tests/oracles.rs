//! Solver and lattice results against naive, independently written searches.

use std::collections::{BTreeSet, HashSet};

use particover_core::catalog::catalog;
use particover_core::constructors::{self, build};
use particover_core::solver::{self, RhoValue, SearchBudget, SigmaValue};
use particover_core::Group;

/// Every subgroup as a sorted element list, found by adjoining one element
/// at a time to subgroups already known.
fn naive_subgroups(g: &Group) -> Vec<Vec<u32>> {
    let close = |gens: &[u32]| -> Vec<u32> {
        let mut set: BTreeSet<u32> = [0].into();
        let mut stack = vec![0u32];
        while let Some(a) = stack.pop() {
            for &x in gens {
                let b = g.mul(a, x);
                if set.insert(b) {
                    stack.push(b);
                }
            }
        }
        set.into_iter().collect()
    };
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut queue = vec![vec![0u32]];
    seen.insert(vec![0]);
    while let Some(h) = queue.pop() {
        for x in g.elements() {
            if h.binary_search(&x).is_ok() {
                continue;
            }
            let mut gens = h.clone();
            gens.push(x);
            let k = close(&gens);
            if seen.insert(k.clone()) {
                queue.push(k);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
    out.sort();
    out
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn gaussian_binomial_sum(p: u64, n: u32) -> u64 {
    let mut total = 0;
    for k in 0..=n {
        let (mut num, mut den) = (1u64, 1u64);
        for i in 0..k {
            num *= p.pow(n - i) - 1;
            den *= p.pow(i + 1) - 1;
        }
        total += num / den;
    }
    total
}

#[test]
fn subgroup_counts_match_naive_enumeration() {
    for spec in catalog(32) {
        let g = build(&spec).unwrap();
        let naive = naive_subgroups(&g);
        let lat = g.lattice().unwrap();
        assert_eq!(lat.len(), naive.len(), "{spec}");
        for s in &naive {
            let set = particover_core::BitSet::from_iter_with_len(g.order(), s.iter().map(|&x| x as usize));
            assert!(lat.index_of(&set).is_some(), "{spec}: missing {s:?}");
        }
    }
}

#[test]
fn subgroup_counts_match_closed_forms() {
    for n in 1..=30u64 {
        let d = divisors(n);
        let expected = d.len() as u64 + d.iter().sum::<u64>();
        let g = constructors::dihedral(2 * n).unwrap();
        assert_eq!(g.lattice().unwrap().len() as u64, expected, "D{}", 2 * n);
    }
    for n in 2..=60u64 {
        assert_eq!(constructors::cyclic(n).unwrap().lattice().unwrap().len(), divisors(n).len(), "C{n}");
    }
    for (p, n) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (5, 3), (7, 2)] {
        let g = constructors::elementary_abelian(p, n).unwrap();
        assert_eq!(g.lattice().unwrap().len() as u64, gaussian_binomial_sum(p, n), "C{p}^{n}");
    }
    let known = [
        (constructors::symmetric(4).unwrap(), 30),
        (constructors::alternating(4).unwrap(), 10),
        (constructors::alternating(5).unwrap(), 59),
        (constructors::symmetric(5).unwrap(), 156),
        (constructors::psl2(7).unwrap(), 179),
    ];
    for (g, count) in known {
        assert_eq!(g.lattice().unwrap().len(), count, "order {}", g.order());
    }
}

/// Minimum number of sets, each taken from `sets` and containing the
/// element it is chosen for, covering `1..n`; `disjoint` forbids overlaps
/// outside the identity.
fn min_cover(n: usize, sets: &[Vec<u32>], disjoint: bool) -> Option<usize> {
    fn go(n: usize, sets: &[Vec<u32>], disjoint: bool, covered: &mut Vec<u32>, depth: usize, best: &mut Option<usize>) {
        if best.is_some_and(|b| depth >= b) {
            return;
        }
        let Some(e) = (1..n).find(|&x| covered[x] == 0) else {
            *best = Some(depth);
            return;
        };
        for s in sets {
            if s.binary_search(&(e as u32)).is_err() {
                continue;
            }
            if disjoint && s.iter().any(|&x| x != 0 && covered[x as usize] > 0) {
                continue;
            }
            for &x in s {
                covered[x as usize] += 1;
            }
            go(n, sets, disjoint, covered, depth + 1, best);
            for &x in s {
                covered[x as usize] -= 1;
            }
        }
    }
    let mut best = None;
    go(n, sets, disjoint, &mut vec![0; n], 0, &mut best);
    best
}

fn proper_nontrivial(g: &Group) -> Vec<Vec<u32>> {
    naive_subgroups(g).into_iter().filter(|s| s.len() > 1 && s.len() < g.order()).collect()
}

fn maximal(g: &Group) -> Vec<Vec<u32>> {
    let all = proper_nontrivial(g);
    let subset = |a: &Vec<u32>, b: &Vec<u32>| a.iter().all(|x| b.binary_search(x).is_ok());
    all.iter().filter(|h| !all.iter().any(|k| k.len() > h.len() && subset(h, k))).cloned().collect()
}

#[test]
fn rho_matches_naive_exact_cover() {
    for spec in catalog(24) {
        let g = build(&spec).unwrap();
        if g.is_cyclic() {
            continue;
        }
        let naive = min_cover(g.order(), &proper_nontrivial(&g), true);
        let out = solver::rho(&g, &SearchBudget::sequential(60.0)).unwrap();
        let got = match out.value {
            RhoValue::Exact(v) => Some(v),
            RhoValue::NotPartitionable => None,
            RhoValue::Interval { .. } => panic!("{spec}: inexact"),
        };
        assert_eq!(got, naive, "{spec}");
    }
}

#[test]
fn sigma_matches_naive_cover() {
    for spec in catalog(32) {
        let g = build(&spec).unwrap();
        if g.is_cyclic() {
            continue;
        }
        let naive = min_cover(g.order(), &maximal(&g), false).unwrap();
        let out = solver::sigma(&g, &SearchBudget::sequential(60.0)).unwrap();
        assert_eq!(out.value, SigmaValue::Exact(naive), "{spec}");
    }
}

/// `GF(3)^3` extended by inversion, written out by hand: `(v, e)` stands
/// for `x -> (-1)^e x + v`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
struct Affine3 {
    v: [u8; 3],
    e: u8,
}

impl Affine3 {
    fn mul(self, o: Self) -> Self {
        let sign = |x: u8| if self.e == 1 { (3 - x) % 3 } else { x };
        let v = std::array::from_fn(|i| (self.v[i] + sign(o.v[i])) % 3);
        Affine3 { v, e: (self.e + o.e) % 2 }
    }
}

#[test]
fn frobenius_c3_cubed_by_inversion_has_ten_member_partition() {
    let id = Affine3 { v: [0; 3], e: 0 };
    let mut members: Vec<HashSet<Affine3>> = Vec::new();
    // the plane of translations with last coordinate zero
    members.push((0..9).map(|i| Affine3 { v: [i / 3, i % 3, 0], e: 0 }).collect());
    // phi = [[0, -1], [1, 0]] has no eigenvalue in GF(3), so phi + t is
    // invertible for every t and the cosets below tile GF(3)^3
    for a in 0..3u8 {
        for b in 0..3u8 {
            let dir = [a, b, 1];
            let w = [(3 - b) % 3, a, 0];
            let mut m = HashSet::new();
            for t in 0..3u8 {
                let l: [u8; 3] = std::array::from_fn(|i| dir[i] * t % 3);
                m.insert(Affine3 { v: l, e: 0 });
                m.insert(Affine3 { v: std::array::from_fn(|i| (w[i] + l[i]) % 3), e: 1 });
            }
            members.push(m);
        }
    }
    for m in &members {
        assert!(m.contains(&id));
        assert!(m.iter().all(|&x| m.iter().all(|&y| m.contains(&x.mul(y)))));
    }
    let mut seen = HashSet::new();
    for m in &members {
        for &x in m.iter().filter(|&&x| x != id) {
            assert!(seen.insert(x), "{x:?} covered twice");
        }
    }
    assert_eq!(seen.len(), 53);
    assert_eq!(members.len(), 10);

    let g = constructors::agl1_frobenius(27, 2).unwrap();
    assert_eq!(g.order_histogram(), [(1, 1), (2, 27), (3, 26)]);
    let out = solver::rho(&g, &SearchBudget::sequential(120.0)).unwrap();
    assert_eq!(out.value, RhoValue::Exact(10));
}
