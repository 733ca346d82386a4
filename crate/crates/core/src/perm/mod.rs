//! Permutations and explicit finite permutation groups.

mod blocks;
mod conjugacy;
mod group;
mod permutation;
pub mod symmetric;

pub use blocks::{is_primitive, minimal_block_system, primitivity_witness, BlockOutcome, BlockSystem};
pub use conjugacy::{are_conjugate_subgroups, conjugacy_key, find_conjugator, ConjugacyKey};
pub use group::{coset_derangement_proportion, group_closure, Coset, PermutationGroup, DEFAULT_ORDER_CAP};
pub use permutation::{PackedPermutation, Permutation, MAX_DEGREE};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("malformed cycle notation {0:?}")]
    Malformed(String),
    #[error("point {point} out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} appears more than once")]
    RepeatedPoint(usize),
    #[error("degree {0} is above the supported limit")]
    DegreeTooLarge(usize),
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("group closure exceeded the order cap {0}")]
    ClosureCapExceeded(usize),
    #[error("group is not transitive")]
    NotTransitive,
    #[error("seed pair must contain two distinct points, got {0} twice")]
    DegenerateSeed(usize),
    #[error("refinement produced a partition that is not a block system")]
    InvalidBlockSystem,
}
