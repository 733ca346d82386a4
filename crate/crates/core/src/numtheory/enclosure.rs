//! Certified rational enclosures of `e` and of natural logarithms.
//!
//! Every interval returned here provably contains the true value: series
//! are truncated and the truncation error is added back as an explicit
//! upper bound on the tail.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{ExactRational, NumberTheoryError, RationalInterval};

/// Doubling of series length stops here; callers report `Indeterminate`
/// rather than go further.
pub const MAX_SERIES_TERMS: u32 = 1 << 14;

/// Series length a precision escalation starts from.
pub const INITIAL_SERIES_TERMS: u32 = 16;

/// `[S_N, S_N + 2/(N+1)!]` with `S_N = Σ_{i=0}^{N} 1/i!`.
///
/// The tail `Σ_{i>N} 1/i!` is below `(1/(N+1)!) (N+2)/(N+1) <= 2/(N+1)!`.
pub fn e_enclosure(terms: u32) -> Result<RationalInterval, NumberTheoryError> {
    if terms < 1 {
        return Err(NumberTheoryError::TooFewTerms(terms));
    }
    // S_N = (Σ N!/i!) / N!, accumulated in integers.
    let mut numer = BigInt::one();
    let mut fact = BigInt::one();
    for i in 1..=u64::from(terms) {
        numer = numer * i + 1;
        fact *= i;
    }
    let partial = ExactRational::new(numer, fact.clone())?;
    let tail = ExactRational::new(2, fact * (u64::from(terms) + 1))?;
    let hi = &partial + &tail;
    RationalInterval::new(partial, hi)
}

/// Enclosure of `1/e`, derived from [`e_enclosure`].
pub fn inv_e_enclosure(terms: u32) -> Result<RationalInterval, NumberTheoryError> {
    e_enclosure(terms)?.recip()
}

/// Enclosure of `atanh(y) = Σ_{k>=0} y^(2k+1)/(2k+1)` for rational
/// `0 <= y < 1`, truncated after `terms` terms.
///
/// With `y = a/b` and `L = lcm(1, 3, ..., 2K-1)` the partial sum is
/// `Σ a^(2k+1) b^(2(K-1-k)) (L/(2k+1)) / (b^(2K-1) L)`, accumulated in
/// integers and reduced once. Tail bound: `y^(2K+1) / ((2K+1)(1 - y^2))`.
fn atanh_enclosure(y: &ExactRational, terms: u32) -> Result<RationalInterval, NumberTheoryError> {
    debug_assert!(!y.is_negative() && y < &ExactRational::one());
    if terms == 0 || y.is_zero() {
        let tail = if y.is_zero() { ExactRational::zero() } else { y / (ExactRational::one() - y * y) };
        return RationalInterval::new(ExactRational::zero(), tail);
    }
    let (a, b) = (y.numerator().clone(), y.denominator().clone());
    let k_max = u64::from(terms);
    let lcm = (0..k_max).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(2 * k + 1)));
    let a2 = &a * &a;
    let b2 = &b * &b;
    // Horner in b^2 from the highest term down: each step multiplies the
    // accumulated higher terms by b^2 / a^2 relative to the next.
    let mut a_pow = a.clone();
    let mut a_pows = Vec::with_capacity(terms as usize);
    for _ in 0..k_max {
        a_pows.push(a_pow.clone());
        a_pow *= &a2;
    }
    let mut numerator = BigInt::zero();
    for (k, ak) in a_pows.iter().enumerate() {
        numerator = numerator * &b2 + ak * (&lcm / BigInt::from(2 * k as u64 + 1));
    }
    let denominator = b.pow(2 * terms - 1) * &lcm;
    let sum = ExactRational::new(numerator, denominator.clone())?;
    // a_pow is now a^(2K+1).
    let tail = ExactRational::new(a_pow, b.pow(2 * terms - 1) * (2 * k_max + 1) * (&b2 - &a2))?;
    let hi = &sum + &tail;
    RationalInterval::new(sum, hi)
}

/// `ln 2 = 2 atanh(1/3)`.
pub fn ln2_enclosure(terms: u32) -> Result<RationalInterval, NumberTheoryError> {
    let third = ExactRational::new(1, 3)?;
    Ok(atanh_enclosure(&third, terms)?.scale(&ExactRational::from(2i64)))
}

/// Position of the highest set bit, i.e. `floor(log2 x)` for `x >= 1`.
fn floor_log2(x: &BigInt) -> i64 {
    x.bits() as i64 - 1
}

/// Certified enclosure of `ln x` for rational `x > 0`.
///
/// Writes `x = 2^j r` with `r ∈ [1, 2)`, then
/// `ln x = j ln 2 + 2 atanh((r-1)/(r+1))`; both series converge at least as
/// fast as powers of `1/9`.
pub fn ln_enclosure(x: &ExactRational, precision_terms: u32) -> Result<RationalInterval, NumberTheoryError> {
    if !x.is_positive() {
        return Err(NumberTheoryError::NonPositiveLogarithm(x.to_string()));
    }
    let mut j = floor_log2(x.numerator()) - floor_log2(x.denominator());
    let two = ExactRational::from(2i64);
    let mut r = x / two.pow(j as i32);
    // The bit-length estimate can be off by one in either direction.
    if r < ExactRational::one() {
        r = r * &two;
        j -= 1;
    } else if r >= two {
        r = r / &two;
        j += 1;
    }
    let y = (&r - ExactRational::one()) / (&r + ExactRational::one());
    let reduced = atanh_enclosure(&y, precision_terms)?.scale(&two);
    if j == 0 {
        return Ok(reduced);
    }
    let ln2 = ln2_enclosure(precision_terms)?;
    Ok(ln2.scale(&ExactRational::from(j)).add(&reduced))
}

/// Enclosure of `ln` over a positive interval, using monotonicity of `ln`.
///
/// Endpoints are first rounded outward to a dyadic grid finer than the
/// series error, which keeps the rationals small when `x` is itself the
/// output of a series.
pub fn ln_interval(x: &RationalInterval, precision_terms: u32) -> Result<RationalInterval, NumberTheoryError> {
    let rounded = x.round_outward(4 * precision_terms + 16);
    // Rounding must not push a tiny positive endpoint down to zero.
    let x =
        if rounded.lo().is_positive() { rounded } else { RationalInterval::new(x.lo().clone(), rounded.hi().clone())? };
    let lo = ln_enclosure(x.lo(), precision_terms)?;
    let hi = ln_enclosure(x.hi(), precision_terms)?;
    RationalInterval::new(lo.lo().clone(), hi.hi().clone())
}

/// Enclosure of `ln ln x / (x ln x)` for `x > 1`.
///
/// This is the function whose monotone decrease on `x >= 5` lets the
/// group-order bound be substituted into the irrationality measure.
pub fn loglog_ratio_enclosure(x: &ExactRational, precision_terms: u32) -> Result<RationalInterval, NumberTheoryError> {
    let ln_x = ln_enclosure(x, precision_terms)?;
    let ln_ln_x = ln_interval(&ln_x, precision_terms)?;
    let denominator = ln_x.scale(x);
    ln_ln_x.div(&denominator)
}
