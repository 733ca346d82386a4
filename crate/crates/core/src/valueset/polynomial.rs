use std::fmt;

use serde::Serialize;

use super::ValueSetError;
use crate::numtheory::is_prime;

/// Largest modulus accepted. Evaluation multiplies two residues in `u64`
/// and the image bitmap holds one byte per field element.
pub const MAX_MODULUS: u64 = 1 << 30;

/// Polynomial over `F_q`, `q` prime, coefficients constant term first.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients and every other polynomial has a nonzero leading one.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct DensePolynomial {
    modulus: u64,
    coefficients: Vec<u64>,
}

impl DensePolynomial {
    /// Reduces every coefficient mod `q`.
    pub fn new(modulus: u64, coefficients: impl IntoIterator<Item = u64>) -> Result<Self, ValueSetError> {
        check_modulus(modulus)?;
        let mut coefficients: Vec<u64> = coefficients.into_iter().map(|c| c % modulus).collect();
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        Ok(Self { modulus, coefficients })
    }

    /// `T^n + c_{n-1} T^{n-1} + ... + c_0`.
    pub fn monic(modulus: u64, lower: &[u64]) -> Result<Self, ValueSetError> {
        Self::new(modulus, lower.iter().copied().chain(std::iter::once(1)))
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn evaluate(&self, x: u64) -> u64 {
        let q = self.modulus;
        let x = x % q;
        self.coefficients.iter().rev().fold(0, |acc, &c| (acc * x + c) % q)
    }

    /// `f(a T + b)`.
    pub fn compose_affine(&self, a: u64, b: u64) -> DensePolynomial {
        let q = self.modulus;
        let (a, b) = (a % q, b % q);
        let mut result: Vec<u64> = Vec::with_capacity(self.coefficients.len());
        for &c in self.coefficients.iter().rev() {
            // result <- result * (a T + b) + c
            let mut next = vec![0u64; result.len() + 1];
            for (i, &r) in result.iter().enumerate() {
                next[i] = (next[i] + r * b) % q;
                next[i + 1] = (next[i + 1] + r * a) % q;
            }
            next[0] = (next[0] + c) % q;
            result = next;
        }
        DensePolynomial::new(q, result).expect("modulus already checked")
    }
}

impl fmt::Display for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coefficients.is_empty() {
            return write!(f, "0 mod {}", self.modulus);
        }
        let mut first = true;
        for (i, &c) in self.coefficients.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("T")?,
                (1, c) => write!(f, "{c}T")?,
                (i, 1) => write!(f, "T^{i}")?,
                (i, c) => write!(f, "{c}T^{i}")?,
            }
        }
        write!(f, " mod {}", self.modulus)
    }
}

impl fmt::Debug for DensePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn check_modulus(q: u64) -> Result<(), ValueSetError> {
    if q > MAX_MODULUS {
        return Err(ValueSetError::ModulusTooLarge(q));
    }
    if !is_prime(q) {
        return Err(ValueSetError::NotPrime(q));
    }
    Ok(())
}

/// `|f(F_q)|`, by evaluating at every field element.
pub fn image_size(f: &DensePolynomial) -> u64 {
    let q = f.modulus as usize;
    let mut seen = vec![false; q];
    let mut count = 0;
    for x in 0..f.modulus {
        let y = f.evaluate(x) as usize;
        if !seen[y] {
            seen[y] = true;
            count += 1;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_a_bijection() {
        let f = DensePolynomial::new(101, [0, 1]).unwrap();
        assert_eq!(image_size(&f), 101);
    }

    #[test]
    fn squares_and_zero() {
        for q in [3, 7, 101] {
            let f = DensePolynomial::monic(q, &[0, 0]).unwrap();
            assert_eq!(image_size(&f), q.div_ceil(2));
        }
        let f = DensePolynomial::monic(2, &[0, 0]).unwrap();
        assert_eq!(image_size(&f), 2);
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(image_size(&DensePolynomial::new(13, [5]).unwrap()), 1);
        let zero = DensePolynomial::new(13, [13, 0, 26]).unwrap();
        assert_eq!(zero.degree(), None);
        assert_eq!(image_size(&zero), 1);
    }

    #[test]
    fn coefficients_are_reduced_and_trimmed() {
        let f = DensePolynomial::new(7, [8, 14, 3, 0, 7]).unwrap();
        assert_eq!(f.coefficients(), &[1, 0, 3]);
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.to_string(), "3T^2 + 1 mod 7");
    }

    #[test]
    fn rejects_composite_and_huge_moduli() {
        assert_eq!(DensePolynomial::new(91, [1]), Err(ValueSetError::NotPrime(91)));
        assert_eq!(DensePolynomial::new(1, [1]), Err(ValueSetError::NotPrime(1)));
        assert!(matches!(DensePolynomial::new(MAX_MODULUS + 1, [1]), Err(ValueSetError::ModulusTooLarge(_))));
    }

    #[test]
    fn affine_composition_matches_pointwise() {
        let f = DensePolynomial::monic(11, &[3, 0, 7]).unwrap();
        let g = f.compose_affine(4, 9);
        assert_eq!(g.degree(), Some(3));
        for x in 0..11 {
            assert_eq!(g.evaluate(x), f.evaluate((4 * x + 9) % 11));
        }
    }
}
