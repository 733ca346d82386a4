//! Witness primes for the imprimitive and intransitive cases.
//!
//! If a coset of `G` has derangement proportion `count / n!` with `count`
//! equal to `D_n` (or `E_n`), then `ν_p(|G|) >= ν_p(n!) - ν_p(count)` for
//! every prime `p`. A witness is a prime for which the order of the
//! ambient overgroup (`S_k ≀ S_l` or `S_u × S_v`) has strictly smaller
//! `p`-adic valuation than that, ruling the overgroup out.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{ProofError, Status, VerificationReport};
use crate::numtheory::{
    alt_derangement_count, big_valuation, derangement_count, factorial_valuation, is_power_of, is_prime,
    prime_divisors, primes_up_to, valuation, wreath_valuation, Variant,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum WitnessShape {
    /// `l` blocks of size `k`, overgroup `S_k ≀ S_l`.
    Wreath { k: u64, l: u64 },
    /// Orbits of sizes `u` and `v`, overgroup `S_u × S_v`.
    Split { u: u64, v: u64 },
}

/// A prime `p` with `lhs < rhs`, where `lhs` is the `p`-adic valuation of
/// the overgroup order and `rhs = ν_p(n!) - ν_p(count)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPrime {
    pub n: u64,
    pub variant: Variant,
    pub prime: u64,
    pub case_label: String,
    pub shape: WitnessShape,
    pub lhs: u64,
    pub rhs: u64,
    /// `ν_p(D_n)` or `ν_p(E_n)`; zero except in the base-2 refinement for
    /// `A_n`, where `E_n / 2` is odd.
    pub count_valuation: u32,
}

fn count(n: u64, variant: Variant) -> BigInt {
    match variant {
        Variant::Symmetric => derangement_count(n),
        Variant::Alternating => alt_derangement_count(n).expect("n >= 1"),
    }
}

/// `ν_p(x!)` as `Σ floor(x / p^i)`, kept separate from the digit-sum form
/// used by the searches.
fn legendre_sum(x: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut power = p;
    while power <= x {
        total += x / power;
        match power.checked_mul(p) {
            Some(next) => power = next,
            None => break,
        }
    }
    total
}

impl WitnessPrime {
    /// Recomputes every claim from scratch: primality, the valuation of
    /// the derangement count by big-integer division, both sides of the
    /// inequality by Legendre's formula, and the shape's arithmetic.
    pub fn revalidate(&self) -> bool {
        let p = self.prime;
        if !is_prime(p) {
            return false;
        }
        let c = count(self.n, self.variant);
        let mut v = 0u32;
        let mut rest = c;
        let big_p = BigInt::from(p);
        while !rest.is_zero() && (&rest % &big_p).is_zero() {
            rest /= &big_p;
            v += 1;
        }
        if v != self.count_valuation {
            return false;
        }
        let refinement =
            self.variant == Variant::Alternating && p == 2 && matches!(self.shape, WitnessShape::Split { .. });
        if v > 0 && !(refinement && v == 1) {
            return false;
        }
        let lhs = match self.shape {
            WitnessShape::Wreath { k, l } => {
                if k < 2 || l < 2 || k * l != self.n {
                    return false;
                }
                l * legendre_sum(k, p) + legendre_sum(l, p)
            }
            WitnessShape::Split { u, v } => {
                if u < 1 || v < 1 || u + v != self.n {
                    return false;
                }
                legendre_sum(u, p) + legendre_sum(v, p)
            }
        };
        let Some(rhs) = legendre_sum(self.n, p).checked_sub(u64::from(v)) else {
            return false;
        };
        lhs == self.lhs && rhs == self.rhs && lhs < rhs
    }
}

/// Witness search result for one factorization `n = k·l`.
#[derive(Clone, Debug, Serialize)]
pub struct FactorizationWitness {
    pub k: u64,
    pub l: u64,
    pub witness: Option<WitnessPrime>,
    /// The case-directed search found nothing and the full scan was used.
    pub fallback_used: bool,
}

/// Least threshold `n` must exceed for each variant.
fn imprimitive_threshold(variant: Variant) -> u64 {
    match variant {
        Variant::Symmetric => 4,
        Variant::Alternating => 6,
    }
}

/// Ordered factorizations `n = k·l` with `k, l >= 2`.
fn factorizations(n: u64) -> Vec<(u64, u64)> {
    (2..=n / 2).filter(|k| n.is_multiple_of(*k) && n / k >= 2).map(|k| (k, n / k)).collect()
}

fn prime_divisors_except(x: u64, excluded: u64) -> Vec<u64> {
    prime_divisors(x).into_iter().filter(|&p| p != excluded).collect()
}

/// Candidate primes in the order the case analysis tries them.
fn case_steps(n: u64, l: u64, variant: Variant) -> Vec<(&'static str, Vec<u64>)> {
    let mut steps = Vec::new();
    match variant {
        Variant::Symmetric => {
            let n2_pow = is_power_of(n - 2, 2);
            if l >= 3 && !n2_pow {
                steps.push(("sym-imprimitive-case1", prime_divisors_except(n - 2, 2)));
            }
            if l == 2 {
                let mut primes = vec![2];
                primes.extend(prime_divisors(n - 3));
                steps.push(("sym-imprimitive-case2", primes));
            }
            if l == 3 && n2_pow {
                steps.push(("sym-imprimitive-case3", vec![3]));
            }
            if l > 3 && n2_pow {
                steps.push(("sym-imprimitive-case4", prime_divisors_except(n - 3, 3)));
            }
        }
        Variant::Alternating => {
            if n <= 30 {
                let half_range = primes_up_to(n).into_iter().filter(|&p| 2 * p > n).collect();
                steps.push(("alt-imprimitive-half-range", half_range));
                return steps;
            }
            let l_24 = l == 2 || l == 4;
            if is_power_of(n - 4, 2) {
                let mut primes = prime_divisors_except(n - 3, 3);
                primes.push(3);
                steps.push(("alt-imprimitive-case1", primes));
            }
            if is_power_of(n - 3, 2) && !l_24 {
                steps.push(("alt-imprimitive-case2", prime_divisors_except(n - 4, 3)));
            }
            if l == 3 {
                let mut primes = vec![3];
                primes.extend(prime_divisors(n - 4));
                steps.push(("alt-imprimitive-case3", primes));
            }
            if !l_24 {
                let mut primes = prime_divisors_except(n - 3, 2);
                primes.extend(prime_divisors_except(n - 4, 2));
                steps.push(("alt-imprimitive-case4", primes));
            }
            if l_24 {
                if !is_power_of(n - 3, 3) {
                    steps.push(("alt-imprimitive-subcase5.1", prime_divisors_except(n - 3, 3)));
                } else if !is_power_of(n - 5, 5) {
                    steps.push(("alt-imprimitive-subcase5.2", prime_divisors_except(n - 5, 5)));
                }
                // Otherwise n - 3 = 3^a and n - 5 = 5^b, which forces n = 30
                // by the Diophantine scan, excluded here since n > 30.
            }
        }
    }
    steps
}

fn try_wreath(n: u64, k: u64, l: u64, p: u64, variant: Variant, c: &BigInt, label: &str) -> Option<WitnessPrime> {
    if !is_prime(p) || c.is_multiple_of(&BigInt::from(p)) {
        return None;
    }
    let w = wreath_valuation(k, l, p);
    w.is_strict().then(|| WitnessPrime {
        n,
        variant,
        prime: p,
        case_label: label.to_string(),
        shape: WitnessShape::Wreath { k, l },
        lhs: w.lhs,
        rhs: w.rhs,
        count_valuation: 0,
    })
}

/// For each ordered factorization `n = k·l` (`k, l >= 2`), the first prime
/// not dividing `D_n` (or `E_n`) that makes the wreath-product valuation
/// strictly smaller than `ν_p(n!)`.
///
/// Primes are tried in case order; only if that yields nothing is every
/// prime up to `n` scanned, and such results are flagged.
pub fn imprimitive_witness(n: u64, variant: Variant) -> Result<Vec<FactorizationWitness>, ProofError> {
    let threshold = imprimitive_threshold(variant);
    if n <= threshold {
        return Err(ProofError::BelowThreshold { n, threshold });
    }
    let c = count(n, variant);
    Ok(factorizations(n)
        .into_par_iter()
        .map(|(k, l)| {
            for (label, primes) in case_steps(n, l, variant) {
                if let Some(w) = primes.iter().find_map(|&p| try_wreath(n, k, l, p, variant, &c, label)) {
                    return FactorizationWitness { k, l, witness: Some(w), fallback_used: false };
                }
            }
            let witness =
                primes_up_to(n).into_iter().find_map(|p| try_wreath(n, k, l, p, variant, &c, "fallback-scan"));
            FactorizationWitness { k, l, witness, fallback_used: true }
        })
        .collect())
}

/// Report over all factorizations of `n`. Refuted if any factorization
/// needed the fallback scan, has no witness, or fails revalidation.
pub fn imprimitive_report(n: u64, variant: Variant) -> Result<VerificationReport, ProofError> {
    let results = imprimitive_witness(n, variant)?;
    let mut report = VerificationReport::new("witness-imprimitive")
        .param("n", n)
        .param("variant", variant)
        .param("factorizations", results.len());
    if results.is_empty() {
        report.status = Status::Skipped;
    }
    for r in &results {
        let valid = r.witness.as_ref().is_some_and(WitnessPrime::revalidate);
        if r.fallback_used || !valid {
            report.refute(r);
        }
        report.witness(r);
    }
    Ok(report)
}

/// Result of the intransitive argument for one split `u + v = n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum IntransitiveOutcome {
    Witness(WitnessPrime),
    /// Equality held for every prime considered, which forces `n | u` and
    /// `n | v`; impossible for `0 < u, v < n`.
    StructuredContradiction {
        n: u64,
        u: u64,
        v: u64,
        reason: String,
    },
    /// The argument reduces to `u = v = n/2`, which is the imprimitive case
    /// with `l = 2` blocks of size `k`.
    CrossReference {
        n: u64,
        u: u64,
        v: u64,
        k: u64,
        l: u64,
        via: String,
    },
    /// The procedure could not conclude; never expected.
    Failure {
        n: u64,
        u: u64,
        v: u64,
        reason: String,
    },
}

impl IntransitiveOutcome {
    pub fn is_failure(&self) -> bool {
        match self {
            IntransitiveOutcome::Failure { .. } => true,
            IntransitiveOutcome::Witness(w) => !w.revalidate(),
            _ => false,
        }
    }
}

fn split_witness(
    n: u64,
    u: u64,
    v: u64,
    p: u64,
    variant: Variant,
    count_valuation: u32,
    label: &str,
) -> Option<WitnessPrime> {
    let lhs = factorial_valuation(u, p) + factorial_valuation(v, p);
    let rhs = factorial_valuation(n, p) - u64::from(count_valuation);
    (lhs < rhs).then(|| WitnessPrime {
        n,
        variant,
        prime: p,
        case_label: label.to_string(),
        shape: WitnessShape::Split { u, v },
        lhs,
        rhs,
        count_valuation,
    })
}

/// True if `p^ν_p(n)` divides both `u` and `v`.
fn prime_part_divides(n: u64, u: u64, v: u64, p: u64) -> bool {
    let e = valuation(n, p);
    let q = p.pow(e);
    u.is_multiple_of(q) && v.is_multiple_of(q)
}

/// Rules out `G <= S_u × S_v` for the split `u + v = n`.
///
/// Symmetric mode uses the primes dividing `n`, none of which divide `D_n`.
/// Alternating mode does the same for the odd part `m` of `n`; if that
/// fails, `m | u, v`, and the base-2 analysis with `E_n / 2` odd allows
/// at most one carry in `u + v`, which forces `u = v`.
pub fn intransitive_witness(n: u64, u: u64, v: u64, variant: Variant) -> Result<IntransitiveOutcome, ProofError> {
    if u == 0 || v == 0 || u + v != n {
        return Err(ProofError::InvalidSplit { n, u, v });
    }
    if variant == Variant::Alternating && n <= 6 {
        return Err(ProofError::BelowThreshold { n, threshold: 6 });
    }
    let c = count(n, variant);
    let odd_only = variant == Variant::Alternating;
    let primes: Vec<u64> = prime_divisors(n).into_iter().filter(|&p| !(odd_only && p == 2)).collect();
    let label = match variant {
        Variant::Symmetric => "sym-intransitive",
        Variant::Alternating => "alt-intransitive-odd",
    };
    for &p in &primes {
        if big_valuation(&c, p) != 0 {
            return Ok(IntransitiveOutcome::Failure { n, u, v, reason: format!("{p} divides the derangement count") });
        }
        if let Some(w) = split_witness(n, u, v, p, variant, 0, label) {
            return Ok(IntransitiveOutcome::Witness(w));
        }
    }
    // No carries for any of these primes: each prime part of n divides u and v.
    if !primes.iter().all(|&p| prime_part_divides(n, u, v, p)) {
        return Ok(IntransitiveOutcome::Failure {
            n,
            u,
            v,
            reason: "equality without the divisibility it implies".into(),
        });
    }
    let odd_part = n >> valuation(n, 2);
    let s = valuation(n, 2);
    let contradiction = |reason: &str| IntransitiveOutcome::StructuredContradiction { n, u, v, reason: reason.into() };
    if variant == Variant::Symmetric || s == 0 {
        return Ok(contradiction("n divides both u and v"));
    }
    if s == 1 {
        return Ok(IntransitiveOutcome::CrossReference {
            n,
            u,
            v,
            k: odd_part,
            l: 2,
            via: "n = 2m with m | u, v".into(),
        });
    }
    // 4 | n: E_n ≡ ±2 (mod n), so E_n / 2 is odd.
    let cv = big_valuation(&c, 2);
    if cv != 1 {
        return Ok(IntransitiveOutcome::Failure { n, u, v, reason: format!("ν_2(E_n) = {cv}, expected 1") });
    }
    if let Some(w) = split_witness(n, u, v, 2, variant, 1, "alt-intransitive-one-carry") {
        return Ok(IntransitiveOutcome::Witness(w));
    }
    let carries = factorial_valuation(n, 2) - factorial_valuation(u, 2) - factorial_valuation(v, 2);
    match carries {
        0 => Ok(contradiction("no base-2 carry in u + v, so n divides both u and v")),
        1 => {
            let half = n / 2;
            if u.is_multiple_of(1 << (s - 1)) && v.is_multiple_of(1 << (s - 1)) && u == half {
                Ok(IntransitiveOutcome::CrossReference {
                    n,
                    u,
                    v,
                    k: half,
                    l: 2,
                    via: "exactly one base-2 carry".into(),
                })
            } else {
                Ok(IntransitiveOutcome::Failure { n, u, v, reason: "one carry without u = v".into() })
            }
        }
        _ => Ok(IntransitiveOutcome::Failure { n, u, v, reason: "several carries but no witness".into() }),
    }
}

/// Report over every split `u + v = n` with `u <= v`.
pub fn intransitive_report(n: u64, variant: Variant) -> Result<VerificationReport, ProofError> {
    let outcomes: Vec<IntransitiveOutcome> =
        (1..=n / 2).into_par_iter().map(|u| intransitive_witness(n, u, n - u, variant)).collect::<Result<_, _>>()?;
    let mut report = VerificationReport::new("witness-intransitive").param("n", n).param("variant", variant);
    for o in &outcomes {
        if o.is_failure() {
            report.refute(o);
        }
        report.witness(o);
    }
    Ok(report)
}

/// Least prime `p` with `n/2 < p <= n` and `p ∤ E_n`, for any `n >= 1`.
pub fn half_range_prime(n: u64) -> Option<u64> {
    let e = alt_derangement_count(n.max(1)).expect("n >= 1");
    primes_up_to(n).into_iter().filter(|&p| 2 * p > n).find(|&p| !e.is_multiple_of(&BigInt::from(p)))
}

/// [`half_range_prime`] restricted to the stated range `6 < n <= 30`.
pub fn half_range_prime_check(n: u64) -> Result<Option<u64>, ProofError> {
    if !(7..=30).contains(&n) {
        return Err(ProofError::OutsideHalfRange(n));
    }
    Ok(half_range_prime(n))
}

#[derive(Serialize)]
struct HalfRangeRow {
    n: u64,
    prime: Option<u64>,
}

/// Half-range primes for every `n` in `from..=to`; refuted if one is missing.
pub fn half_range_report(from: u64, to: u64) -> VerificationReport {
    let mut report = VerificationReport::new("half-range-prime").param("from", from).param("to", to);
    for n in from..=to {
        let row = HalfRangeRow { n, prime: half_range_prime(n) };
        if row.prime.is_none() {
            report.refute(&row);
        }
        report.witness(&row);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness_for(n: u64, k: u64, l: u64, variant: Variant) -> WitnessPrime {
        imprimitive_witness(n, variant)
            .unwrap()
            .into_iter()
            .find(|f| f.k == k && f.l == l)
            .and_then(|f| f.witness)
            .unwrap()
    }

    #[test]
    fn six_as_three_times_two() {
        let w = witness_for(6, 3, 2, Variant::Symmetric);
        assert_eq!((w.prime, w.lhs, w.rhs), (2, 3, 4));
        assert_eq!(w.case_label, "sym-imprimitive-case2");
        assert!(w.revalidate());
    }

    #[test]
    fn six_as_two_times_three() {
        let w = witness_for(6, 2, 3, Variant::Symmetric);
        assert_eq!((w.prime, w.lhs, w.rhs), (3, 1, 2));
        assert_eq!(w.case_label, "sym-imprimitive-case3");
    }

    #[test]
    fn eight_as_four_times_two_uses_n_minus_3() {
        let w = witness_for(8, 4, 2, Variant::Symmetric);
        assert_eq!(w.prime, 5);
        assert_eq!(w.case_label, "sym-imprimitive-case2");
    }

    #[test]
    fn thresholds() {
        assert!(matches!(imprimitive_witness(4, Variant::Symmetric), Err(ProofError::BelowThreshold { .. })));
        assert!(matches!(imprimitive_witness(6, Variant::Alternating), Err(ProofError::BelowThreshold { .. })));
        assert!(imprimitive_witness(7, Variant::Symmetric).unwrap().is_empty());
    }

    #[test]
    fn four_as_two_times_two_has_no_witness_at_all() {
        let c = derangement_count(4);
        assert!(primes_up_to(4).into_iter().all(|p| try_wreath(4, 2, 2, p, Variant::Symmetric, &c, "x").is_none()));
    }

    #[test]
    fn tampered_witness_fails_revalidation() {
        let mut w = witness_for(6, 3, 2, Variant::Symmetric);
        w.rhs += 1;
        assert!(!w.revalidate());
        let mut w = witness_for(6, 3, 2, Variant::Symmetric);
        w.prime = 4;
        assert!(!w.revalidate());
    }

    #[test]
    fn symmetric_splits_of_six() {
        for (u, v, p, lhs, rhs) in [(2, 4, 3, 1, 2), (1, 5, 2, 3, 4), (3, 3, 2, 2, 4)] {
            let IntransitiveOutcome::Witness(w) = intransitive_witness(6, u, v, Variant::Symmetric).unwrap() else {
                panic!("expected witness for {u} + {v}");
            };
            assert_eq!((w.prime, w.lhs, w.rhs), (p, lhs, rhs), "{u} + {v}");
            assert!(w.revalidate());
        }
    }

    #[test]
    fn alternating_even_halves_cross_reference() {
        assert!(matches!(
            intransitive_witness(10, 5, 5, Variant::Alternating).unwrap(),
            IntransitiveOutcome::CrossReference { k: 5, l: 2, .. }
        ));
        match intransitive_witness(8, 4, 4, Variant::Alternating).unwrap() {
            IntransitiveOutcome::CrossReference { via, k: 4, .. } => assert_eq!(via, "exactly one base-2 carry"),
            other => panic!("unexpected {other:?}"),
        }
        // 6 + 6 carries in base 3, so the odd part already gives a witness.
        match intransitive_witness(12, 6, 6, Variant::Alternating).unwrap() {
            IntransitiveOutcome::Witness(w) => assert_eq!(w.prime, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn alternating_refinement_witness() {
        // 16 has no odd prime factor; 4 + 12 has two base-2 carries.
        match intransitive_witness(16, 4, 12, Variant::Alternating).unwrap() {
            IntransitiveOutcome::Witness(w) => {
                assert_eq!(w.prime, 2);
                assert_eq!(w.count_valuation, 1);
                assert_eq!(w.case_label, "alt-intransitive-one-carry");
                assert!(w.revalidate());
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn split_validation() {
        assert!(intransitive_witness(6, 0, 6, Variant::Symmetric).is_err());
        assert!(intransitive_witness(6, 2, 3, Variant::Symmetric).is_err());
        assert!(intransitive_witness(6, 3, 3, Variant::Alternating).is_err());
    }

    #[test]
    fn half_range_primes() {
        assert_eq!(alt_derangement_count(7).unwrap(), BigInt::from(1860));
        assert_eq!(half_range_prime_check(7).unwrap(), Some(7));
        let p = half_range_prime_check(10).unwrap().unwrap();
        assert!(p > 5 && p <= 10);
        assert!(half_range_prime_check(6).is_err());
        assert!(half_range_prime_check(31).is_err());
        assert!(half_range_report(7, 30).is_verified());
    }
}
