//! Exact arithmetic underlying every check: derangement numbers and their
//! congruences, `p`-adic valuations and carries, and certified enclosures
//! of `e` and logarithms.

mod approx;
mod derangement;
pub mod enclosure;
mod padic;
mod rational;

pub use approx::{closest_to_inv_e, min_distance_bounded_numerator, ClosestFraction};
pub use derangement::{
    alt_derangement_count, alt_derangement_mod, derangement_count, derangement_mod, derangement_mod_n,
    derangement_mod_n_minus_2, derangement_mod_n_minus_3, derangement_proportion, factorial, reduced_denominator,
    CongruenceClass, DerangementTable, Variant,
};
pub use enclosure::{e_enclosure, inv_e_enclosure, ln2_enclosure, ln_enclosure, ln_interval, loglog_ratio_enclosure};
pub use padic::{
    big_valuation, carries_of_sum, carry_count_repeated, digit_sum, digits, factorial_valuation, is_power_of, is_prime,
    prime_divisors, primes_up_to, valuation, valuation_equality_classify, wreath_valuation, CarryProfile, CarryStep,
    ValuationCase, ValuationTag, WreathValuation,
};
pub use rational::{ExactRational, RationalInterval};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumberTheoryError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("interval endpoints out of order: [{lo}, {hi}]")]
    InvertedInterval { lo: String, hi: String },
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("modulus n - m is not positive (n = {n}, m = {m})")]
    EmptyModulus { n: u64, m: u64 },
    #[error("unsupported shift {0}; expected one of 0, 3, 4, 5")]
    UnsupportedShift(u64),
    #[error("series needs at least one term, got {0}")]
    TooFewTerms(u32),
    #[error("logarithm of non-positive value {0}")]
    NonPositiveLogarithm(String),
    #[error("target enclosure must be positive")]
    NonPositiveTarget,
    #[error("enclosure too wide to certify a verdict")]
    Indeterminate,
}
