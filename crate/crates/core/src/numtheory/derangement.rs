//! Derangement numbers `D_n`, their alternating-group analogue
//! `E_n = D_n + (-1)^(n-1) (n-1)`, and the congruences used to exhibit
//! primes not dividing them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ExactRational, NumberTheoryError};

/// Which ambient group a derangement statistic refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Proportions relative to `S_n`, numerator `D_n`.
    Symmetric,
    /// Proportions relative to `A_n`, numerator `E_n`.
    Alternating,
}

impl Variant {
    pub fn short_name(self) -> &'static str {
        match self {
            Variant::Symmetric => "sym",
            Variant::Alternating => "alt",
        }
    }
}

fn sign(n: u64) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `D_n` via `D_n = n D_(n-1) + (-1)^n`, `D_0 = 1`.
pub fn derangement_count(n: u64) -> BigInt {
    let mut d = BigInt::one();
    for i in 1..=n {
        d = d * i + sign(i);
    }
    d
}

/// `E_n = D_n + (-1)^(n-1) (n-1)`; for `n >= 2`, `E_n / 2` counts the even
/// derangements.
pub fn alt_derangement_count(n: u64) -> Result<BigInt, NumberTheoryError> {
    if n == 0 {
        return Err(NumberTheoryError::ZeroDegree);
    }
    Ok(derangement_count(n) + sign(n - 1) * BigInt::from(n - 1))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

fn numerator(n: u64, variant: Variant) -> Result<BigInt, NumberTheoryError> {
    match variant {
        Variant::Symmetric => Ok(derangement_count(n)),
        Variant::Alternating => alt_derangement_count(n),
    }
}

/// `D_n / n!` or `E_n / n!` in lowest terms.
pub fn derangement_proportion(n: u64, variant: Variant) -> Result<ExactRational, NumberTheoryError> {
    ExactRational::new(numerator(n, variant)?, factorial(n))
}

/// Denominator of the reduced proportion (`d_n` or `e_n`).
pub fn reduced_denominator(n: u64, variant: Variant) -> Result<BigInt, NumberTheoryError> {
    if n == 0 {
        return Err(NumberTheoryError::ZeroDegree);
    }
    Ok(derangement_proportion(n, variant)?.denominator().clone())
}

/// Precomputed `D_0..=D_max` and `E_1..=E_max`.
#[derive(Clone, Debug)]
pub struct DerangementTable {
    max_n: u64,
    d_values: Vec<BigInt>,
    e_values: Vec<BigInt>,
}

impl DerangementTable {
    pub fn new(max_n: u64) -> Self {
        let mut d_values = Vec::with_capacity(max_n as usize + 1);
        d_values.push(BigInt::one());
        for i in 1..=max_n {
            let next = d_values.last().unwrap() * i + sign(i);
            d_values.push(next);
        }
        // Index 0 of e_values is a placeholder so indices line up with n.
        let e_values = d_values
            .iter()
            .enumerate()
            .map(|(i, d)| if i == 0 { BigInt::zero() } else { d + sign(i as u64 - 1) * BigInt::from(i - 1) })
            .collect();
        Self { max_n, d_values, e_values }
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn d(&self, n: u64) -> &BigInt {
        &self.d_values[n as usize]
    }

    /// `E_n`; `None` for `n = 0` where it is undefined.
    pub fn e(&self, n: u64) -> Option<&BigInt> {
        (n >= 1).then(|| &self.e_values[n as usize])
    }

    pub fn count(&self, n: u64, variant: Variant) -> Option<&BigInt> {
        match variant {
            Variant::Symmetric => Some(self.d(n)),
            Variant::Alternating => self.e(n),
        }
    }
}

/// A residue class reported both in the signed form of the
/// congruences (`±1`, `±2`, `2(-1)^n`, ...) and as its canonical representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceClass {
    pub modulus: u64,
    pub signed: i64,
}

impl CongruenceClass {
    /// Representative in `[0, modulus)`.
    pub fn canonical(&self) -> u64 {
        assert!(self.modulus > 0, "zero modulus");
        self.signed.rem_euclid(self.modulus as i64) as u64
    }

    pub fn matches(&self, value: &BigInt) -> bool {
        value.mod_floor(&BigInt::from(self.modulus)) == BigInt::from(self.canonical())
    }
}

/// `D_m mod modulus` by running the recurrence in machine words.
fn derangement_residue(m: u64, modulus: u64) -> u64 {
    let md = modulus as u128;
    let mut d: u128 = 1 % md;
    for i in 1..=m {
        d = (d * (i as u128 % md)) % md;
        d = if i % 2 == 0 { (d + 1) % md } else { (d + md - 1) % md };
    }
    d as u64
}

fn symmetric_residue(value: u64, modulus: u64) -> i64 {
    if value > modulus / 2 {
        value as i64 - modulus as i64
    } else {
        value as i64
    }
}

/// `D_n mod (n - m)` via `D_n ≡ (-1)^(n-m) D_m`, without forming `D_n`.
///
/// The signed field holds the symmetric representative in
/// `(-(n-m)/2, (n-m)/2]`.
pub fn derangement_mod(n: u64, m: u64) -> Result<CongruenceClass, NumberTheoryError> {
    if m >= n {
        return Err(NumberTheoryError::EmptyModulus { n, m });
    }
    let modulus = n - m;
    let dm = derangement_residue(m, modulus);
    let value = if (n - m).is_multiple_of(2) { dm } else { (modulus - dm) % modulus };
    Ok(CongruenceClass { modulus, signed: symmetric_residue(value, modulus) })
}

/// `D_n ≡ (-1)^n (mod n)`.
pub fn derangement_mod_n(n: u64) -> CongruenceClass {
    CongruenceClass { modulus: n, signed: sign(n) }
}

/// `D_n ≡ (-1)^n (mod n-2)`, for `n > 2`.
pub fn derangement_mod_n_minus_2(n: u64) -> CongruenceClass {
    assert!(n > 2);
    CongruenceClass { modulus: n - 2, signed: sign(n) }
}

/// `D_n ≡ 2(-1)^(n-1) (mod n-3)`, for `n > 3`.
pub fn derangement_mod_n_minus_3(n: u64) -> CongruenceClass {
    assert!(n > 3);
    CongruenceClass { modulus: n - 3, signed: 2 * sign(n - 1) }
}

/// `E_n mod (n - shift)` in closed form, for `shift ∈ {0, 3, 4, 5}`:
/// `2(-1)^n`, `4(-1)^(n-1)`, `6(-1)^n`, `48(-1)^(n-1)` respectively.
pub fn alt_derangement_mod(n: u64, shift: u64) -> Result<CongruenceClass, NumberTheoryError> {
    let signed = match shift {
        0 => 2 * sign(n),
        3 => 4 * sign(n.wrapping_sub(1)),
        4 => 6 * sign(n),
        5 => 48 * sign(n.wrapping_sub(1)),
        _ => return Err(NumberTheoryError::UnsupportedShift(shift)),
    };
    if n <= shift {
        return Err(NumberTheoryError::EmptyModulus { n, m: shift });
    }
    Ok(CongruenceClass { modulus: n - shift, signed })
}
