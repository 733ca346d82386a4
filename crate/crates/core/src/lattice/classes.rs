use std::collections::BTreeMap;

use super::{LatticeError, SubgroupLattice};
use crate::perm::{are_conjugate_subgroups, conjugacy_key, PermutationGroup};

/// Partitions the lattice into `S_n`-conjugacy classes and returns one
/// group per class.
///
/// Subgroups are bucketed by [`conjugacy_key`]; inside a bucket each group
/// is compared against the classes found so far with an explicit conjugator
/// search. The lattice's own class labels are not consulted. Classes come
/// out in the order of their first member in the lattice.
pub fn classes_up_to_conjugacy(lattice: &SubgroupLattice) -> Result<Vec<PermutationGroup>, LatticeError> {
    let mut buckets: BTreeMap<_, Vec<usize>> = BTreeMap::new();
    let mut representatives: Vec<(usize, PermutationGroup)> = Vec::new();
    for (i, sub) in lattice.subgroups().iter().enumerate() {
        let group = sub.to_group(lattice.degree());
        let bucket = buckets.entry(conjugacy_key(&group)).or_default();
        let mut found = false;
        for &r in bucket.iter() {
            if are_conjugate_subgroups(&representatives[r].1, &group)? {
                found = true;
                break;
            }
        }
        if !found {
            bucket.push(representatives.len());
            representatives.push((i, group));
        }
    }
    Ok(representatives.into_iter().map(|(_, g)| g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::all_subgroups;

    #[test]
    fn s4_has_eleven_classes_matching_lattice_labels() {
        let lattice = all_subgroups(4).unwrap();
        let classes = classes_up_to_conjugacy(&lattice).unwrap();
        assert_eq!(classes.len(), 11);
        let mut orders: Vec<usize> = classes.iter().map(PermutationGroup::order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![1, 2, 2, 3, 4, 4, 4, 6, 8, 12, 24]);
        assert_eq!(classes.len(), lattice.class_count());
    }
}
