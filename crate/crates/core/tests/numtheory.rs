use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use proptest::prelude::*;

use derangement_core::numtheory::*;

/// Counts derangements and even derangements of `S_n` by walking every
/// permutation with Heap's algorithm, updating the fixed-point count and
/// the sign per transposition.
fn brute_force_counts(n: usize) -> (u64, u64) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut fixed = n;
    let mut even = true;
    let mut deranged = u64::from(n == 0);
    let mut even_deranged = deranged;
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            for &pos in &[j, i] {
                if a[pos] == pos {
                    fixed -= 1;
                }
            }
            a.swap(j, i);
            for &pos in &[j, i] {
                if a[pos] == pos {
                    fixed += 1;
                }
            }
            even = !even;
            if fixed == 0 {
                deranged += 1;
                if even {
                    even_deranged += 1;
                }
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    (deranged, even_deranged)
}

/// `ν_p(x!)` as the sum of `ν_p(i)` over `i <= x`.
fn naive_factorial_valuation(x: u64, p: u64) -> u64 {
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

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn counts_match_enumeration() {
    for n in 0..=9 {
        let (d, even) = brute_force_counts(n);
        assert_eq!(derangement_count(n as u64), BigInt::from(d), "D_{n}");
        if n >= 2 {
            assert_eq!(alt_derangement_count(n as u64).unwrap(), BigInt::from(2 * even), "E_{n}");
        }
    }
}

#[test]
fn table_agrees_with_single_values() {
    let table = DerangementTable::new(40);
    for n in 0..=40 {
        assert_eq!(table.d(n), &derangement_count(n));
        if n >= 1 {
            assert_eq!(table.e(n).unwrap(), &alt_derangement_count(n).unwrap());
        }
    }
}

#[test]
fn inclusion_exclusion_agrees_with_recurrence() {
    for n in 0..=30u64 {
        let sum: BigInt = (0..=n)
            .map(|i| {
                let term = binomial(n, i) * factorial(n - i);
                if i % 2 == 0 {
                    term
                } else {
                    -term
                }
            })
            .sum();
        assert_eq!(sum, derangement_count(n));
    }
}

#[test]
fn congruences_up_to_500() {
    let table = DerangementTable::new(500);
    for n in 1..=500u64 {
        let d = table.d(n);
        if n >= 2 {
            assert!(derangement_mod_n(n).matches(d), "D_{n} mod n");
        }
        if n > 3 {
            assert!(derangement_mod_n_minus_2(n).matches(d), "D_{n} mod n-2");
            assert!(derangement_mod_n_minus_3(n).matches(d), "D_{n} mod n-3");
        }
        let e = table.e(n).unwrap();
        for shift in [0, 3, 4, 5] {
            if n > shift + 1 {
                let class = alt_derangement_mod(n, shift).unwrap();
                assert!(class.matches(e), "E_{n} mod n-{shift}");
            }
        }
    }
}

#[test]
fn e_over_two_is_odd_when_four_divides_n() {
    for n in (4..=200u64).step_by(4) {
        let e = alt_derangement_count(n).unwrap();
        assert_eq!(big_valuation(&e, 2), 1, "n = {n}");
    }
}

#[test]
fn reduced_denominators_by_gcd() {
    for n in 1..=60u64 {
        let f = factorial(n);
        let d = derangement_count(n);
        assert_eq!(reduced_denominator(n, Variant::Symmetric).unwrap(), &f / d.gcd(&f));
        let e = alt_derangement_count(n).unwrap();
        assert_eq!(reduced_denominator(n, Variant::Alternating).unwrap(), &f / e.gcd(&f));
    }
}

#[test]
fn classifier_matches_valuations_exhaustively() {
    for p in primes_up_to(13) {
        for k in 2..=12 {
            for l in 2..=12 {
                let strict_by_naive = l * naive_factorial_valuation(k, p) + naive_factorial_valuation(l, p)
                    < naive_factorial_valuation(k * l, p);
                let case = valuation_equality_classify(k, l, p);
                assert_eq!(case.tag == ValuationTag::Strict, strict_by_naive, "k={k} l={l} p={p}");
                if case.tag == ValuationTag::NoCarries {
                    assert!(l < p, "no carries must force l < p (k={k} l={l} p={p})");
                }
            }
        }
    }
}

#[test]
fn e_and_ln_enclosures_contain_float_values() {
    for terms in [4, 8, 16, 32] {
        let e = e_enclosure(terms).unwrap();
        assert!(e.lo().to_f64_lossy() <= std::f64::consts::E + 1e-15);
        assert!(e.hi().to_f64_lossy() >= std::f64::consts::E - 1e-15);
        let ln2 = ln2_enclosure(terms).unwrap();
        assert!(ln2.lo().to_f64_lossy() <= std::f64::consts::LN_2 + 1e-15);
        assert!(ln2.hi().to_f64_lossy() >= std::f64::consts::LN_2 - 1e-15);
    }
    let e32 = e_enclosure(32).unwrap();
    assert!(e32.width() < ExactRational::new(1, 10u64.pow(15)).unwrap());
}

proptest! {
    #[test]
    fn legendre_matches_naive(x in 0u64..3000, p in prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 101])) {
        prop_assert_eq!(factorial_valuation(x, p), naive_factorial_valuation(x, p));
    }

    #[test]
    fn kummer_carries_count_binomial_valuation(a in 0u64..500, b in 0u64..500, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let profile = carries_of_sum(&[a, b], p);
        let v = big_valuation(&binomial(a + b, a), p);
        prop_assert_eq!(profile.total_carry(), u64::from(v));
        prop_assert_eq!(profile.carry_count as u64, u64::from(v));
    }

    #[test]
    fn repeated_carries_equal_digit_sum_drop(k in 1u64..200, l in 1u64..20, p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let profile = carry_count_repeated(k, l, p);
        prop_assert_eq!((profile.total_carry()) * (p - 1), l * digit_sum(k, p) - digit_sum(k * l, p));
    }

    #[test]
    fn residues_match_big_integer_reduction(n in 6u64..400, m in 0u64..5) {
        let class = derangement_mod(n, m).unwrap();
        let d = derangement_count(n);
        prop_assert!(class.matches(&d));
        prop_assert!(class.signed.unsigned_abs() <= class.modulus / 2 + 1);
    }

    #[test]
    fn rational_parsing_round_trips(a in -10_000i64..10_000, b in 1i64..10_000) {
        let q = ExactRational::new(a, b).unwrap();
        let back: ExactRational = q.to_string().parse().unwrap();
        prop_assert_eq!(back, q);
    }

    #[test]
    fn ln_enclosure_contains_float_log(num in 1u64..1_000_000, den in 1u64..1000) {
        let x = ExactRational::new(num, den).unwrap();
        let enclosure = ln_enclosure(&x, 16).unwrap();
        let f = (num as f64 / den as f64).ln();
        prop_assert!(enclosure.lo().to_f64_lossy() <= f + 1e-9);
        prop_assert!(enclosure.hi().to_f64_lossy() >= f - 1e-9);
    }

    #[test]
    fn consecutive_proportions_differ_by_signed_reciprocal_factorial(n in 2u64..150) {
        let cur = derangement_proportion(n, Variant::Symmetric).unwrap();
        let prev = derangement_proportion(n - 1, Variant::Symmetric).unwrap();
        let step = ExactRational::new(if n % 2 == 0 { 1 } else { -1 }, factorial(n)).unwrap();
        prop_assert_eq!(cur - prev, step);
    }
}
