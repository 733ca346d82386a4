//! Certified inequalities for the primitive case.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use serde::Serialize;

use super::{ProofError, Status, VerificationReport};
use crate::numtheory::enclosure::{INITIAL_SERIES_TERMS, MAX_SERIES_TERMS};
use crate::numtheory::{
    closest_to_inv_e, e_enclosure, factorial, ln2_enclosure, ln_enclosure, ln_interval, reduced_denominator,
    ExactRational, NumberTheoryError, RationalInterval, Variant,
};

/// First degree scanned by [`primitive_cutoff`]; the group-order bound is
/// only used for `n >= 5`.
pub const CUTOFF_SCAN_START: u64 = 5;
/// Last degree scanned. The left side decays like `1/n!` and the right side
/// only geometrically, so nothing past the cutoff can hold again.
pub const CUTOFF_SCAN_END: u64 = 120;

/// Range on which `d_n >= 4^n` is asserted.
pub const SYM_POWER_RANGE: RangeInclusive<u64> = 12..=41;
/// Range on which `e_n >= 4^n` is asserted.
pub const ALT_POWER_RANGE: RangeInclusive<u64> = 14..=49;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CutoffVerdict {
    InequalityHolds,
    InequalityFails,
    Indeterminate,
}

#[derive(Clone, Debug, Serialize)]
pub struct CutoffResult {
    pub variant: Variant,
    /// Largest scanned `n` whose verdict is [`CutoffVerdict::InequalityHolds`].
    pub cutoff: Option<u64>,
    pub per_n_verdicts: BTreeMap<u64, CutoffVerdict>,
    /// Series length that first decided each `n`.
    pub terms_used: BTreeMap<u64, u32>,
    /// Every verdict was recomputed at twice the deciding series length
    /// and came out the same.
    pub stable_under_doubling: bool,
}

impl CutoffResult {
    pub fn expected_cutoff(variant: Variant) -> u64 {
        match variant {
            Variant::Symmetric => 41,
            Variant::Alternating => 49,
        }
    }
}

/// `1/(n+1)!` for `S_n`, `n^2/(n+1)!` for `A_n`.
fn cutoff_lhs(n: u64, variant: Variant) -> ExactRational {
    let numerator = match variant {
        Variant::Symmetric => BigInt::from(1),
        Variant::Alternating => BigInt::from(n) * n,
    };
    ExactRational::new(numerator, factorial(n + 1)).expect("factorial is positive")
}

/// Enclosures of `e`, `ln 2` and `ln ln 2` at one series length.
struct Constants {
    e: RationalInterval,
    ln2: RationalInterval,
    ln_ln2: RationalInterval,
}

impl Constants {
    fn new(terms: u32) -> Result<Self, NumberTheoryError> {
        let ln2 = ln2_enclosure(terms)?;
        let ln_ln2 = ln_interval(&ln2, terms)?;
        Ok(Constants { e: e_enclosure(terms)?, ln2, ln_ln2 })
    }
}

/// Memoizes [`Constants`] by series length across a scan.
#[derive(Default)]
struct ConstantCache(BTreeMap<u32, Constants>);

impl ConstantCache {
    fn get(&mut self, terms: u32) -> Result<&Constants, NumberTheoryError> {
        match self.0.entry(terms) {
            Entry::Occupied(e) => Ok(e.into_mut()),
            Entry::Vacant(e) => Ok(e.insert(Constants::new(terms)?)),
        }
    }
}

/// Enclosure of `ln ln 4^n / (3 e 16^n ln 4^n)`, using `ln 4^n = 2n ln 2`
/// and `ln ln 4^n = ln 2n + ln ln 2`.
fn cutoff_rhs(n: u64, terms: u32, cache: &mut ConstantCache) -> Result<RationalInterval, NumberTheoryError> {
    let c = cache.get(terms)?;
    let two_n = ExactRational::from_integer(BigInt::from(2 * n));
    let ln_x = c.ln2.scale(&two_n);
    let ln_ln_x = ln_enclosure(&two_n, terms)?.add(&c.ln_ln2);
    let scale = ExactRational::from_integer(BigInt::from(16).pow(n as u32) * 3);
    let denominator = c.e.scale(&scale).mul(&ln_x);
    ln_ln_x.div(&denominator)
}

/// Certified verdict on `lhs > x` for an unknown `x` in `rhs`.
fn classify(lhs: &ExactRational, rhs: &RationalInterval) -> CutoffVerdict {
    if lhs > rhs.hi() {
        CutoffVerdict::InequalityHolds
    } else if lhs <= rhs.lo() {
        CutoffVerdict::InequalityFails
    } else {
        CutoffVerdict::Indeterminate
    }
}

fn verdict(
    n: u64,
    variant: Variant,
    terms: u32,
    cache: &mut ConstantCache,
) -> Result<CutoffVerdict, NumberTheoryError> {
    Ok(classify(&cutoff_lhs(n, variant), &cutoff_rhs(n, terms, cache)?))
}

/// Decides `lhs(n) > ln ln 4^n / (3 e 16^n ln 4^n)` for every scanned `n`
/// with certified enclosures, doubling the series length until decided.
pub fn primitive_cutoff(variant: Variant) -> Result<CutoffResult, ProofError> {
    let mut per_n_verdicts = BTreeMap::new();
    let mut terms_used = BTreeMap::new();
    let mut stable = true;
    let mut cache = ConstantCache::default();
    for n in CUTOFF_SCAN_START..=CUTOFF_SCAN_END {
        let mut terms = INITIAL_SERIES_TERMS;
        let mut v = verdict(n, variant, terms, &mut cache)?;
        while v == CutoffVerdict::Indeterminate && terms < MAX_SERIES_TERMS {
            terms *= 2;
            v = verdict(n, variant, terms, &mut cache)?;
        }
        if v != CutoffVerdict::Indeterminate {
            stable &= verdict(n, variant, terms * 2, &mut cache)? == v;
        }
        per_n_verdicts.insert(n, v);
        terms_used.insert(n, terms);
    }
    let cutoff = per_n_verdicts.iter().filter(|(_, v)| **v == CutoffVerdict::InequalityHolds).map(|(n, _)| *n).max();
    Ok(CutoffResult { variant, cutoff, per_n_verdicts, terms_used, stable_under_doubling: stable })
}

/// Report form of [`primitive_cutoff`], checked against the expected cutoff.
pub fn cutoff_report(variant: Variant) -> Result<VerificationReport, ProofError> {
    let result = primitive_cutoff(variant)?;
    let expected = CutoffResult::expected_cutoff(variant);
    let mut report = VerificationReport::new("cutoff")
        .param("variant", variant)
        .param("scan", [CUTOFF_SCAN_START, CUTOFF_SCAN_END])
        .param("expected_cutoff", expected);
    report.witness(serde_json::json!({
        "cutoff": result.cutoff,
        "stable_under_doubling": result.stable_under_doubling,
        "max_terms": result.terms_used.values().max(),
    }));
    if result.per_n_verdicts.values().any(|v| *v == CutoffVerdict::Indeterminate) {
        report.status = Status::Indeterminate;
    } else if result.cutoff != Some(expected) || !result.stable_under_doubling {
        report.refute(&result);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerBoundRow {
    pub n: u64,
    /// Reduced denominator of `D_n/n!` or `E_n/n!`, in decimal.
    pub denominator: String,
    pub at_least_four_pow_n: bool,
    /// Whether `n` lies in the range where the bound is asserted.
    pub asserted: bool,
}

/// Checks `d_n >= 4^n` (or `e_n >= 4^n`) for every `n` from the start of
/// the asserted range up to `upper`. Smaller `n` are listed for reference
/// and never refute.
pub fn denominator_vs_power_bound(variant: Variant, upper: u64) -> Result<VerificationReport, ProofError> {
    let range = match variant {
        Variant::Symmetric => SYM_POWER_RANGE,
        Variant::Alternating => ALT_POWER_RANGE,
    };
    let mut report = VerificationReport::new("den-bound")
        .param("variant", variant)
        .param("asserted_from", *range.start())
        .param("asserted_to", upper);
    for n in 1..=upper {
        let denominator = reduced_denominator(n, variant)?;
        let row = PowerBoundRow {
            n,
            at_least_four_pow_n: denominator >= BigInt::from(4).pow(n as u32),
            denominator: denominator.to_string(),
            asserted: n >= *range.start(),
        };
        if row.asserted && !row.at_least_four_pow_n {
            report.refute(&row);
        }
        report.witness(&row);
    }
    Ok(report)
}

/// The distance `1/e` must keep from every fraction with small numerator:
/// `1/6!` for `S_n`, `15^2/16!` for `A_n`.
fn numerator_floor_threshold(variant: Variant) -> ExactRational {
    match variant {
        Variant::Symmetric => ExactRational::new(1, 720).expect("nonzero"),
        Variant::Alternating => ExactRational::new(225, factorial(16)).expect("nonzero"),
    }
}

/// Certifies that no `a/b` with `a <= numerator_cap` lies within the
/// variant's threshold of `1/e`.
pub fn numerator_floor_check(variant: Variant, numerator_cap: u64) -> Result<VerificationReport, ProofError> {
    let threshold = numerator_floor_threshold(variant);
    let mut report = VerificationReport::new("numerator-floor")
        .param("variant", variant)
        .param("numerator_cap", numerator_cap)
        .param("threshold", &threshold);
    match closest_to_inv_e(numerator_cap) {
        Ok((None, _)) => {}
        Ok((Some(closest), terms)) => {
            let clear = closest.distance_lower_bound > threshold;
            report.witness(serde_json::json!({ "closest": closest, "terms": terms }));
            if !clear {
                report.refute(&closest);
            }
        }
        Err(NumberTheoryError::Indeterminate) => report.status = Status::Indeterminate,
        Err(e) => return Err(e.into()),
    }
    Ok(report)
}
