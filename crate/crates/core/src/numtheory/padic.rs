//! Base-`p` digits, factorial valuations and carry counting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// Trial-division primality test; adequate for the small primes used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors in increasing order. Empty for 0 and 1.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

/// True if `k = p^j` for some `j >= 1`.
pub fn is_power_of(k: u64, p: u64) -> bool {
    if k < p {
        return false;
    }
    let mut k = k;
    while k.is_multiple_of(p) {
        k /= p;
    }
    k == 1
}

/// `ν_p(x)` for `x > 0`.
pub fn valuation(mut x: u64, p: u64) -> u32 {
    assert!(x > 0, "valuation of zero");
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// `ν_p(x)` for a nonzero big integer.
pub fn big_valuation(x: &BigInt, p: u64) -> u32 {
    assert!(!x.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// Base-`p` digits, least significant first. Zero has no digits.
pub fn digits(mut x: u64, p: u64) -> Vec<u64> {
    debug_assert!(p >= 2);
    let mut out = Vec::new();
    while x > 0 {
        out.push(x % p);
        x /= p;
    }
    out
}

/// `s_p(x)`, the sum of the base-`p` digits.
pub fn digit_sum(x: u64, p: u64) -> u64 {
    digits(x, p).iter().sum()
}

/// `ν_p(x!) = (x - s_p(x)) / (p - 1)`.
pub fn factorial_valuation(x: u64, p: u64) -> u64 {
    (x - digit_sum(x, p)) / (p - 1)
}

/// One column of a base-`p` addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarryStep {
    pub position: usize,
    pub carry_in: u64,
    pub carry_out: u64,
}

/// Record of a digitwise base-`p` addition.
///
/// Carries are accumulated column by column, so with more than two summands
/// an incoming carry may exceed 1. `carry_count` counts columns whose
/// outgoing carry is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CarryProfile {
    pub prime: u64,
    pub carry_count: usize,
    pub trace: Vec<CarryStep>,
}

impl CarryProfile {
    /// Sum of all outgoing carries, `(Σ s_p(x_i) - s_p(Σ x_i)) / (p - 1)`.
    pub fn total_carry(&self) -> u64 {
        self.trace.iter().map(|s| s.carry_out).sum()
    }

    fn from_columns(column_sums: Vec<u64>, p: u64) -> Self {
        let mut trace = Vec::with_capacity(column_sums.len());
        let mut carry = 0;
        let mut position = 0;
        while position < column_sums.len() || carry > 0 {
            let column = column_sums.get(position).copied().unwrap_or(0) + carry;
            let carry_out = column / p;
            trace.push(CarryStep { position, carry_in: carry, carry_out });
            carry = carry_out;
            position += 1;
        }
        let carry_count = trace.iter().filter(|s| s.carry_out > 0).count();
        Self { prime: p, carry_count, trace }
    }
}

/// Carries in the base-`p` addition `terms[0] + terms[1] + ...`.
pub fn carries_of_sum(terms: &[u64], p: u64) -> CarryProfile {
    let mut columns: Vec<u64> = Vec::new();
    for &t in terms {
        for (i, d) in digits(t, p).into_iter().enumerate() {
            if columns.len() <= i {
                columns.resize(i + 1, 0);
            }
            columns[i] += d;
        }
    }
    CarryProfile::from_columns(columns, p)
}

/// Carries in the `l`-term addition `k + k + ... + k` in base `p`.
pub fn carry_count_repeated(k: u64, l: u64, p: u64) -> CarryProfile {
    CarryProfile::from_columns(digits(k, p).into_iter().map(|d| d * l).collect(), p)
}

/// Both sides of `ν_p((k!)^l l!) <= ν_p((kl)!)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WreathValuation {
    pub lhs: u64,
    pub rhs: u64,
}

impl WreathValuation {
    pub fn is_strict(&self) -> bool {
        self.lhs < self.rhs
    }
}

pub fn wreath_valuation(k: u64, l: u64, p: u64) -> WreathValuation {
    WreathValuation {
        lhs: l * factorial_valuation(k, p) + factorial_valuation(l, p),
        rhs: factorial_valuation(k * l, p),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ValuationTag {
    /// `k` is a power of `p`; equality holds.
    PowerOfP,
    /// No carries in `k + ... + k`; equality holds and `l < p`.
    NoCarries,
    /// Strict inequality.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationCase {
    pub tag: ValuationTag,
    pub detail: Option<CarryProfile>,
}

/// Decides which branch of the equality criterion for
/// `ν_p((k!)^l l!) <= ν_p((kl)!)` applies, using only digit information.
pub fn valuation_equality_classify(k: u64, l: u64, p: u64) -> ValuationCase {
    if is_power_of(k, p) {
        return ValuationCase { tag: ValuationTag::PowerOfP, detail: None };
    }
    let profile = carry_count_repeated(k, l, p);
    let tag = if profile.carry_count == 0 { ValuationTag::NoCarries } else { ValuationTag::Strict };
    ValuationCase { tag, detail: Some(profile) }
}
