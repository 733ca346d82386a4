use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{enclosure, ExactRational, NumberTheoryError, RationalInterval};

/// Closest fraction with bounded numerator to a target enclosed by an
/// interval, with a certified lower bound on its distance to the target.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosestFraction {
    pub fraction: ExactRational,
    pub distance_lower_bound: ExactRational,
    pub distance_upper_bound: ExactRational,
}

/// Certified distance bounds from the point `x` to an unknown value in
/// `target`. The lower bound is zero when `x` lies inside the interval.
fn distance_bounds(x: &ExactRational, target: &RationalInterval) -> (ExactRational, ExactRational) {
    let to_lo = (x - target.lo()).abs();
    let to_hi = (x - target.hi()).abs();
    let upper = to_lo.clone().max(to_hi.clone());
    let lower = if target.contains(x) { ExactRational::zero() } else { to_lo.min(to_hi) };
    (lower, upper)
}

/// Enumerates all `a/b` with `1 <= a <= numerator_cap` that can be closest to
/// a positive target in `target`, and returns the certified closest one.
///
/// For fixed `a`, `|a/b - t|` decreases in `b` while `a/b > t` and increases
/// once `a/b < t`, so only `b <= ceil(a / t_lo) + 1` need to be examined.
///
/// Returns `Ok(None)` when `numerator_cap` is zero, and
/// [`NumberTheoryError::Indeterminate`] when the enclosure is too wide to
/// separate the best candidate from the runner-up or from the target.
pub fn min_distance_bounded_numerator(
    numerator_cap: u64,
    target: &RationalInterval,
) -> Result<Option<ClosestFraction>, NumberTheoryError> {
    if !target.is_positive() {
        return Err(NumberTheoryError::NonPositiveTarget);
    }
    let mut candidates: Vec<(ExactRational, ExactRational, ExactRational)> = Vec::new();
    for a in 1..=numerator_cap {
        let b_max = (ExactRational::from(a) / target.lo()).ceil() + BigInt::one();
        let b_max = b_max.to_u64().ok_or(NumberTheoryError::NonPositiveTarget)?;
        for b in 1..=b_max {
            let x = ExactRational::new(a, b)?;
            if candidates.iter().any(|(c, _, _)| c == &x) {
                continue;
            }
            let (lo, hi) = distance_bounds(&x, target);
            candidates.push((x, lo, hi));
        }
    }
    let Some(best_index) = candidates.iter().enumerate().min_by(|(_, l), (_, r)| l.2.cmp(&r.2)).map(|(i, _)| i) else {
        return Ok(None);
    };
    let (fraction, lower, upper) = candidates[best_index].clone();
    if lower.is_zero() {
        return Err(NumberTheoryError::Indeterminate);
    }
    // The winner must beat every rival for every value in the enclosure.
    let separated =
        candidates.iter().enumerate().all(|(i, (_, rival_lower, _))| i == best_index || rival_lower > &upper);
    if !separated {
        return Err(NumberTheoryError::Indeterminate);
    }
    Ok(Some(ClosestFraction { fraction, distance_lower_bound: lower, distance_upper_bound: upper }))
}

/// Runs [`min_distance_bounded_numerator`] against enclosures of `1/e`,
/// doubling the series length until the verdict is certified.
///
/// Returns the result together with the series length that decided it.
pub fn closest_to_inv_e(numerator_cap: u64) -> Result<(Option<ClosestFraction>, u32), NumberTheoryError> {
    let mut terms = enclosure::INITIAL_SERIES_TERMS;
    loop {
        let target = enclosure::inv_e_enclosure(terms)?;
        match min_distance_bounded_numerator(numerator_cap, &target) {
            Err(NumberTheoryError::Indeterminate) if terms < enclosure::MAX_SERIES_TERMS => terms *= 2,
            other => return other.map(|r| (r, terms)),
        }
    }
}
