//! Theorem-level checks and witness searches, each producing a
//! [`VerificationReport`].

mod bounds;
mod characterization;
mod diophantine;
mod report;
mod witness;

pub use bounds::{
    cutoff_report, denominator_vs_power_bound, numerator_floor_check, primitive_cutoff, CutoffResult, CutoffVerdict,
    PowerBoundRow, ALT_POWER_RANGE, CUTOFF_SCAN_END, CUTOFF_SCAN_START, SYM_POWER_RANGE,
};
pub use characterization::{
    denominator_divisibility_check, published_exceptional_list, verify_alternating_characterization,
    verify_symmetric_characterization, ExceptionalClass, ExceptionalList,
};
pub use diophantine::{diophantine_report, diophantine_scan, expected_solutions, DiophantineKind};
pub use report::{Status, VerificationReport, SCHEMA_VERSION};
pub use witness::{
    half_range_prime, half_range_prime_check, half_range_report, imprimitive_report, imprimitive_witness,
    intransitive_report, intransitive_witness, FactorizationWitness, IntransitiveOutcome, WitnessPrime, WitnessShape,
};

use thiserror::Error;

use crate::lattice::LatticeError;
use crate::numtheory::NumberTheoryError;
use crate::perm::PermError;

#[derive(Debug, Error)]
pub enum ProofError {
    #[error("degree {degree} is above the exhaustive limit {limit}")]
    DegreeAboveLimit { degree: usize, limit: usize },
    #[error("n = {n} is below the threshold n > {threshold} required here")]
    BelowThreshold { n: u64, threshold: u64 },
    #[error("invalid split {u} + {v} of {n}")]
    InvalidSplit { n: u64, u: u64, v: u64 },
    #[error("half-range check is stated for 6 < n <= 30, got {0}")]
    OutsideHalfRange(u64),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    NumberTheory(#[from] NumberTheoryError),
}
