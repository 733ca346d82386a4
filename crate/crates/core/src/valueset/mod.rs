//! Value sets of polynomial maps over prime fields, measured by brute force
//! and compared with `1 - D_n/n!`.

mod experiment;
mod polynomial;

pub use experiment::{
    bsd_reference, run_experiment, valueset_report, Experiment, ExperimentSummary, ImageStats, DEFAULT_BAND_CONSTANT,
};
pub use polynomial::{image_size, DensePolynomial, MAX_MODULUS};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValueSetError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the brute-force limit {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    #[error("expected a polynomial of degree {expected}, found {found:?}")]
    DegreeMismatch { expected: usize, found: Option<usize> },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("band constant must be positive")]
    NonPositiveBand,
}
