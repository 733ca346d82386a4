//! Machine-checked ingredients of the characterization of `S_n` and `A_n`
//! by their proportion of derangements.
//!
//! * [`numtheory`]: derangement numbers, congruences, valuations, carries
//!   and certified enclosures of `e` and `ln`.
//! * [`perm`]: permutations and explicit finite permutation groups.
//! * [`lattice`]: exhaustive subgroup enumeration of `S_n` for `n <= 7` and
//!   ingestion of external group datasets.
//! * [`proof`]: theorem-level verifications and witness searches, emitted
//!   as [`proof::VerificationReport`]s.
//! * [`valueset`]: value sets of polynomials over prime fields.

pub mod lattice;
pub mod numtheory;
pub mod perm;
pub mod proof;
pub mod valueset;
