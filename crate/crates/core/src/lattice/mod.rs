//! Subgroup lattices of small symmetric groups and ingestion of external
//! group datasets.

mod classes;
mod dataset;
mod enumerate;

pub use classes::classes_up_to_conjugacy;
pub use dataset::{ingest_group_file, parse_entries, parse_group_dataset, validate_entry, GroupDatasetEntry};
pub use enumerate::{all_subgroups, LatticeSubgroup, SubgroupLattice, MAX_LATTICE_DEGREE};

use thiserror::Error;

use crate::perm::PermError;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error("degree {degree} is above the exhaustive limit {limit}")]
    DegreeAboveLimit { degree: usize, limit: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("group {label:?}: generators give order {actual}, file claims {claimed}")]
    OrderMismatch { label: String, claimed: usize, actual: usize },
    #[error("group {label:?}: file claims primitive = {claimed}, block search says {actual}")]
    PrimitivityMismatch { label: String, claimed: bool, actual: bool },
    #[error("group {label:?}: {source}")]
    Group { label: String, source: PermError },
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}
