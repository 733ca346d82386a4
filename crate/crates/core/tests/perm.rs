use std::collections::BTreeSet;

use num_bigint::BigInt;
use proptest::prelude::*;

use derangement_core::numtheory::{derangement_count, ExactRational};
use derangement_core::perm::symmetric::factorial_usize;
use derangement_core::perm::*;

fn permutation(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=degree).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

/// A degree in `3..=6`, up to three generators and two extra permutations.
fn group_case() -> impl Strategy<Value = (usize, Vec<Permutation>, Permutation, Permutation)> {
    (3usize..=6)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(permutation(n), 1..=3), permutation(n), permutation(n)))
}

/// Closure by breadth-first multiplication, independent of the library's
/// closure routine.
fn naive_closure(n: usize, gens: &[Permutation]) -> BTreeSet<Permutation> {
    let mut seen = BTreeSet::from([Permutation::identity(n)]);
    let mut frontier = vec![Permutation::identity(n)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.compose(&x);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

/// Every partition of `{1..n}` into blocks of size `k`.
fn equal_partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(rest: Vec<usize>, k: usize, acc: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        let Some((&first, tail)) = rest.split_first() else {
            out.push(acc.clone());
            return;
        };
        let tail = tail.to_vec();
        let choose = k - 1;
        let m = tail.len();
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as usize != choose {
                continue;
            }
            let mut block = vec![first];
            let mut remaining = Vec::new();
            for (i, &x) in tail.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    block.push(x);
                } else {
                    remaining.push(x);
                }
            }
            acc.push(block);
            go(remaining, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go((1..=n).collect(), k, &mut Vec::new(), &mut out);
    out
}

fn primitive_by_brute_force(group: &PermutationGroup) -> bool {
    let n = group.degree();
    if !group.is_transitive() {
        return false;
    }
    (2..n).filter(|k| n.is_multiple_of(*k)).all(|k| {
        equal_partitions(n, k).iter().all(|blocks| {
            !group.generators().iter().all(|g| {
                blocks.iter().all(|b| {
                    let image: BTreeSet<usize> = b.iter().map(|&x| g.apply(x)).collect();
                    blocks.iter().any(|c| c.iter().copied().collect::<BTreeSet<_>>() == image)
                })
            })
        })
    })
}

#[test]
fn coset_counts_sum_to_derangement_number() {
    for n in 2..=6 {
        let full_cycle = format!("({})", (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(","));
        for gens in [vec![], vec!["(1,2)".to_string()], vec![full_cycle]] {
            let g = PermutationGroup::from_cycle_strings(n, &gens).unwrap();
            let total: usize = g.coset_derangement_counts().unwrap().iter().map(|(_, c)| c).sum();
            assert_eq!(BigInt::from(total), derangement_count(n as u64), "n = {n}, gens = {gens:?}");
        }
    }
}

#[test]
fn known_primitive_and_imprimitive_groups() {
    let d4 = PermutationGroup::from_cycle_strings(4, &["(1,2,3,4)", "(1,3)"]).unwrap();
    assert!(!is_primitive(&d4));
    let s4 = PermutationGroup::symmetric(4).unwrap();
    assert!(is_primitive(&s4));
    let c5 = PermutationGroup::from_cycle_strings(5, &["(1,2,3,4,5)"]).unwrap();
    assert!(is_primitive(&c5));
    let c6 = PermutationGroup::from_cycle_strings(6, &["(1,2,3,4,5,6)"]).unwrap();
    let witness = primitivity_witness(&c6).unwrap().unwrap();
    assert!(witness.is_invariant_under(&c6));
    assert!(witness.block_count() > 1 && witness.block_size() > 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_matches_naive((n, gens, _, _) in group_case()) {
        let g = PermutationGroup::generate(n, &gens).unwrap();
        let naive = naive_closure(n, &gens);
        prop_assert_eq!(g.order(), naive.len());
        prop_assert!(naive.iter().all(|x| g.contains(x)));
        prop_assert_eq!(factorial_usize(n) % g.order(), 0);
    }

    #[test]
    fn cycle_notation_round_trips(p in (1usize..=9).prop_flat_map(permutation)) {
        let text = p.format_cycles();
        prop_assert_eq!(Permutation::parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn coset_proportion_is_conjugation_invariant((n, gens, sigma, tau) in group_case()) {
        let g = PermutationGroup::generate(n, &gens).unwrap();
        let conjugated = g.conjugate_by(&tau);
        let before = coset_derangement_proportion(&Coset::new(&g, sigma.clone()).unwrap());
        let after = coset_derangement_proportion(&Coset::new(&conjugated, sigma.conjugate_by(&tau)).unwrap());
        prop_assert_eq!(before, after);
    }

    #[test]
    fn coset_proportion_matches_direct_count((n, gens, sigma, _) in group_case()) {
        let g = PermutationGroup::generate(n, &gens).unwrap();
        let coset = Coset::new(&g, sigma.clone()).unwrap();
        let direct = g.elements().iter().filter(|x| x.compose(&sigma).fixed_point_count() == 0).count();
        prop_assert_eq!(coset.derangement_count(), direct);
        prop_assert_eq!(
            coset_derangement_proportion(&coset),
            ExactRational::new(direct as u64, g.order() as u64).unwrap()
        );
    }

    #[test]
    fn average_over_cosets_is_the_global_proportion((n, gens, _, _) in group_case()) {
        let g = PermutationGroup::generate(n, &gens).unwrap();
        let counts = g.coset_derangement_counts().unwrap();
        prop_assert_eq!(counts.len() * g.order(), factorial_usize(n));
        let total: usize = counts.iter().map(|(_, c)| c).sum();
        prop_assert_eq!(BigInt::from(total), derangement_count(n as u64));
    }

    #[test]
    fn primitivity_matches_partition_search((n, gens, _, _) in group_case()) {
        let g = PermutationGroup::generate(n, &gens).unwrap();
        prop_assert_eq!(is_primitive(&g), primitive_by_brute_force(&g));
    }

    #[test]
    fn conjugates_are_recognized((n, gens, _, tau) in group_case()) {
        let g = PermutationGroup::generate(n, &gens).unwrap();
        let h = g.conjugate_by(&tau);
        prop_assert!(are_conjugate_subgroups(&g, &h).unwrap());
        let c = find_conjugator(&g, &h).unwrap().unwrap();
        prop_assert!(g.conjugate_by(&c).elements().iter().all(|x| h.contains(x)));
    }
}
