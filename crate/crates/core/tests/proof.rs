use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::prelude::*;

use derangement_core::lattice::all_subgroups;
use derangement_core::numtheory::{ExactRational, Variant};
use derangement_core::perm::{coset_derangement_proportion, Coset, PermutationGroup};
use derangement_core::proof::*;

/// `D_n` and `E_n` from the inclusion-exclusion sum, independent of the
/// library's recurrence.
fn oracle_count(n: u64, variant: Variant) -> BigInt {
    let mut term = BigInt::one();
    let mut total = BigInt::zero();
    for i in 0..=n {
        if i > 0 {
            term = term * (n - i + 1) / i;
        }
        let mut rest = BigInt::one();
        for j in 1..=(n - i) {
            rest *= j;
        }
        let t = &term * rest;
        if i % 2 == 0 {
            total += t;
        } else {
            total -= t;
        }
    }
    match variant {
        Variant::Symmetric => total,
        Variant::Alternating => {
            let correction = BigInt::from(n - 1);
            if n.is_multiple_of(2) {
                total - correction
            } else {
                total + correction
            }
        }
    }
}

fn oracle_is_prime(p: u64) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn oracle_vp_factorial(x: u64, p: u64) -> u64 {
    (1..=x)
        .map(|mut i| {
            let mut v = 0;
            while i % p == 0 {
                i /= p;
                v += 1;
            }
            v
        })
        .sum()
}

fn is_power(x: u64, base: u64) -> bool {
    let mut y = 1;
    while y < x {
        y *= base;
    }
    y == x
}

/// The hypotheses each case label promises about `(n, k, l, p)`.
fn label_is_sound(w: &WitnessPrime) -> bool {
    let (n, p) = (w.n, w.prime);
    let WitnessShape::Wreath { l, .. } = w.shape else { return false };
    let divides = |x: u64| x.is_multiple_of(p);
    match w.case_label.as_str() {
        "sym-imprimitive-case1" => l >= 3 && !is_power(n - 2, 2) && p != 2 && divides(n - 2),
        "sym-imprimitive-case2" => l == 2 && n % 2 == 0 && (p == 2 || divides(n - 3)),
        "sym-imprimitive-case3" => l == 3 && is_power(n - 2, 2) && p == 3,
        "sym-imprimitive-case4" => l > 3 && is_power(n - 2, 2) && p != 3 && divides(n - 3),
        "alt-imprimitive-half-range" => n <= 30 && 2 * p > n && p <= n,
        "alt-imprimitive-case1" => is_power(n - 4, 2) && (p == 3 || divides(n - 3)),
        "alt-imprimitive-case2" => is_power(n - 3, 2) && l != 2 && l != 4 && p != 3 && divides(n - 4),
        "alt-imprimitive-case3" => l == 3 && (p == 3 || divides(n - 4)),
        "alt-imprimitive-case4" => l != 2 && l != 4 && p != 2 && (divides(n - 3) || divides(n - 4)),
        "alt-imprimitive-subcase5.1" => (l == 2 || l == 4) && !is_power(n - 3, 3) && p != 3 && divides(n - 3),
        "alt-imprimitive-subcase5.2" => (l == 2 || l == 4) && is_power(n - 3, 3) && p != 5 && divides(n - 5),
        _ => false,
    }
}

fn independently_valid(w: &WitnessPrime) -> bool {
    let p = w.prime;
    let c = oracle_count(w.n, w.variant);
    let mut v = 0;
    let mut rest = c;
    while (&rest % p).is_zero() {
        rest /= p;
        v += 1;
    }
    let lhs = match w.shape {
        WitnessShape::Wreath { k, l } => l * oracle_vp_factorial(k, p) + oracle_vp_factorial(l, p),
        WitnessShape::Split { u, v } => oracle_vp_factorial(u, p) + oracle_vp_factorial(v, p),
    };
    oracle_is_prime(p) && v == w.count_valuation && lhs < oracle_vp_factorial(w.n, p) - u64::from(v)
}

fn witness_for(n: u64, k: u64, variant: Variant) -> WitnessPrime {
    imprimitive_witness(n, variant).unwrap().into_iter().find(|f| f.k == k).unwrap().witness.unwrap()
}

#[test]
fn imprimitive_examples() {
    assert_eq!(witness_for(6, 3, Variant::Symmetric).prime, 2);
    let w = witness_for(6, 3, Variant::Symmetric);
    assert_eq!((w.lhs, w.rhs), (3, 4));
    let w = witness_for(6, 2, Variant::Symmetric);
    assert_eq!((w.prime, w.lhs, w.rhs), (3, 1, 2));
    let w = witness_for(8, 4, Variant::Symmetric);
    assert_eq!(w.prime, 5);
    assert_eq!(w.case_label, "sym-imprimitive-case2");
}

#[test]
fn imprimitive_witnesses_revalidate_independently() {
    for (variant, start) in [(Variant::Symmetric, 5u64), (Variant::Alternating, 7)] {
        for n in start..=150 {
            for f in imprimitive_witness(n, variant).unwrap() {
                assert!(!f.fallback_used, "n={n} k={} {variant:?}", f.k);
                let w = f.witness.expect("witness");
                assert!(independently_valid(&w), "{w:?}");
                assert!(label_is_sound(&w), "{w:?}");
                assert!(w.revalidate());
            }
        }
    }
}

#[test]
fn degenerate_degrees_are_rejected() {
    assert!(imprimitive_witness(4, Variant::Symmetric).is_err());
    assert!(imprimitive_witness(6, Variant::Alternating).is_err());
    assert!(imprimitive_witness(4, Variant::Alternating).is_err());
    assert!(intransitive_witness(6, 3, 3, Variant::Alternating).is_err());
    assert!(intransitive_witness(6, 2, 3, Variant::Symmetric).is_err());
}

#[test]
fn intransitive_examples() {
    let prime_of = |u, v| match intransitive_witness(6, u, v, Variant::Symmetric).unwrap() {
        IntransitiveOutcome::Witness(w) => (w.prime, w.lhs, w.rhs),
        other => panic!("{other:?}"),
    };
    assert_eq!(prime_of(2, 4), (3, 1, 2));
    assert_eq!(prime_of(1, 5), (2, 3, 4));
    assert_eq!(prime_of(3, 3), (2, 2, 4));
}

#[test]
fn intransitive_splits_never_fail() {
    for (variant, start) in [(Variant::Symmetric, 5u64), (Variant::Alternating, 7)] {
        for n in start..=60 {
            let mut refinement_reached = false;
            for u in 1..n {
                let outcome = intransitive_witness(n, u, n - u, variant).unwrap();
                assert!(!outcome.is_failure(), "{outcome:?}");
                match &outcome {
                    IntransitiveOutcome::Witness(w) => {
                        assert!(independently_valid(w), "{w:?}");
                        refinement_reached |= w.case_label == "alt-intransitive-one-carry";
                    }
                    IntransitiveOutcome::CrossReference { u, v, k, l, via, .. } => {
                        assert_eq!((u, *l), (v, 2));
                        assert_eq!(k * l, n);
                        refinement_reached |= via == "exactly one base-2 carry";
                    }
                    IntransitiveOutcome::StructuredContradiction { .. } => {}
                    IntransitiveOutcome::Failure { .. } => unreachable!(),
                }
            }
            if variant == Variant::Alternating && n % 4 == 0 {
                assert!(refinement_reached, "n = {n}");
            }
        }
    }
}

#[test]
fn half_range_primes_for_small_degrees() {
    for n in 7..=30 {
        let p = half_range_prime_check(n).unwrap().expect("exists");
        assert!(oracle_is_prime(p) && 2 * p > n && p <= n);
        assert!(!(oracle_count(n, Variant::Alternating) % p).is_zero());
    }
    assert_eq!(half_range_prime_check(7).unwrap(), Some(7));
    assert!(half_range_prime_check(31).is_err());
    assert!(half_range_report(7, 30).is_verified());
}

#[test]
fn diophantine_solutions() {
    assert_eq!(diophantine_scan(DiophantineKind::ThreePowEqTwoPowMinus1, 64), vec![(1, 2)]);
    assert_eq!(diophantine_scan(DiophantineKind::ThreePowMinusFivePowEq2, 64), vec![(3, 2)]);
    assert!(diophantine_scan(DiophantineKind::ThreePowEqTwoPowMinus1, 1).is_empty());
    assert!(diophantine_scan(DiophantineKind::ThreePowMinusFivePowEq2, 1).is_empty());
}

#[test]
fn power_bounds_match_gcd_oracle() {
    for (variant, range) in [(Variant::Symmetric, 12..=41u64), (Variant::Alternating, 14..=49)] {
        let report = denominator_vs_power_bound(variant, *range.end()).unwrap();
        assert!(report.is_verified());
        for n in range {
            let mut fact = BigInt::one();
            for i in 1..=n {
                fact *= i;
            }
            let den = &fact / oracle_count(n, variant).gcd(&fact);
            assert!(den >= BigInt::from(4).pow(n as u32), "n = {n}");
            assert_eq!(report.witnesses[n as usize - 1]["denominator"], den.to_string());
        }
    }
}

#[test]
fn closest_small_numerator_fraction_is_four_elevenths() {
    // 1/e from 40 series terms is exact to far beyond the gaps involved.
    let mut inv_e = ExactRational::zero();
    let mut term = ExactRational::one();
    for i in 0..40i64 {
        if i > 0 {
            term = term / ExactRational::from(-i);
        }
        inv_e = inv_e + &term;
    }
    let best = (1..=4u64)
        .flat_map(|a| (a..=4 * a).map(move |b| ExactRational::new(a, b).unwrap()))
        .min_by_key(|f| (f - &inv_e).abs())
        .unwrap();
    assert_eq!(best, ExactRational::new(4, 11).unwrap());
    let report = numerator_floor_check(Variant::Symmetric, 4).unwrap();
    assert!(report.is_verified());
    assert_eq!(report.witnesses[0]["closest"]["fraction"], "4/11");
    assert!(numerator_floor_check(Variant::Alternating, 4).unwrap().is_verified());
}

#[test]
fn cutoffs() {
    for (variant, expected) in [(Variant::Symmetric, 41), (Variant::Alternating, 49)] {
        let result = primitive_cutoff(variant).unwrap();
        assert_eq!(result.cutoff, Some(expected));
        assert!(result.stable_under_doubling);
        assert!(result.per_n_verdicts.values().all(|v| *v != CutoffVerdict::Indeterminate));
        assert!(cutoff_report(variant).unwrap().is_verified());
    }
}

#[test]
fn symmetric_characterization_and_alternating_gap() {
    for n in 2..=6 {
        let report = verify_symmetric_characterization(n).unwrap();
        assert!(report.is_verified(), "{}", report.to_record());
        let gap = report.witnesses.last().unwrap();
        assert_eq!(gap["gap_is_n_minus_1_over_n_factorial"], true);
    }
}

#[test]
fn alternating_exceptional_orders() {
    for (n, orders) in [(4, vec![4, 4, 8]), (5, vec![5, 10, 20]), (6, vec![36, 36])] {
        let (report, found) = verify_alternating_characterization(n).unwrap();
        assert!(report.is_verified(), "{}", report.to_record());
        let mut got: Vec<usize> = found.classes.iter().map(|c| c.order).collect();
        got.sort_unstable();
        assert_eq!(got, orders);
    }
}

#[test]
fn dihedral_ten_matches_alternating_proportion() {
    let d10 = PermutationGroup::from_cycle_strings(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).unwrap();
    assert_eq!(d10.order(), 10);
    assert!(d10.is_even());
    let p = coset_derangement_proportion(&Coset::new(&d10, derangement_core::perm::Permutation::identity(5)).unwrap());
    assert_eq!(p, ExactRational::new(2, 5).unwrap());
    assert_eq!(p, ExactRational::new(oracle_count(5, Variant::Alternating), 120).unwrap());
}

#[test]
fn only_the_full_group_attains_the_symmetric_proportion() {
    for n in 2..=5usize {
        let lattice = all_subgroups(n).unwrap();
        let target =
            ExactRational::new(oracle_count(n as u64, Variant::Symmetric), (1..=n as u64).product::<u64>()).unwrap();
        for s in lattice.subgroups() {
            let g = s.to_group(n);
            let attains = g
                .coset_derangement_counts()
                .unwrap()
                .iter()
                .any(|(_, c)| ExactRational::new(*c as u64, g.order() as u64).unwrap() == target);
            assert_eq!(attains, g.order() == (1..=n).product::<usize>(), "n = {n}, order {}", g.order());
        }
    }
}

#[test]
fn report_status_combination() {
    use Status::*;
    assert_eq!(Status::combine([Verified, Skipped]), Verified);
    assert_eq!(Status::combine([Verified, Indeterminate]), Indeterminate);
    assert_eq!(Status::combine([Indeterminate, Refuted]), Refuted);
    assert_eq!(Status::combine([]), Skipped);
    assert_eq!((Verified.exit_code(), Refuted.exit_code(), Indeterminate.exit_code()), (0, 1, 2));
}

proptest! {
    #[test]
    fn diophantine_scan_is_monotone_in_the_bound(bound in 0u32..64) {
        for kind in [DiophantineKind::ThreePowEqTwoPowMinus1, DiophantineKind::ThreePowMinusFivePowEq2] {
            let found = diophantine_scan(kind, bound);
            let full = diophantine_scan(kind, 64);
            prop_assert!(found.iter().all(|s| full.contains(s)));
            prop_assert!(found.iter().all(|&(a, b)| a <= bound && b <= bound));
        }
    }

    #[test]
    fn large_imprimitive_degrees_have_sound_witnesses(n in 151u64..400) {
        for variant in [Variant::Symmetric, Variant::Alternating] {
            for f in imprimitive_witness(n, variant).unwrap() {
                prop_assert!(!f.fallback_used);
                let w = f.witness.unwrap();
                prop_assert!(label_is_sound(&w), "{:?}", w);
                prop_assert!(w.revalidate());
            }
        }
    }
}
