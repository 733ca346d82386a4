use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use super::symmetric::{self, RankSet};
use super::{PackedPermutation, PermError, Permutation};
use crate::numtheory::ExactRational;

/// Default bound on materialized group orders.
pub const DEFAULT_ORDER_CAP: usize = 10_000_000;

/// A finite permutation group with its element set materialized.
///
/// Elements are stored in breadth-first discovery order from the
/// generators, identity first, so enumeration order is deterministic.
#[derive(Clone, Debug)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
    packed: Option<Vec<PackedPermutation>>,
}

impl PartialEq for PermutationGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.members == other.members
    }
}

impl Eq for PermutationGroup {}

/// Breadth-first closure of `generators` under composition.
pub fn group_closure(
    degree: usize,
    generators: &[Permutation],
    order_cap: usize,
) -> Result<PermutationGroup, PermError> {
    for g in generators {
        if g.degree() != degree {
            return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
        }
    }
    let identity = Permutation::identity(degree);
    let mut members = HashSet::from([identity.clone()]);
    let mut elements = vec![identity];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in generators {
            let next = elements[i].compose(g);
            if members.insert(next.clone()) {
                if elements.len() >= order_cap {
                    return Err(PermError::ClosureCapExceeded(order_cap));
                }
                elements.push(next);
                queue.push_back(elements.len() - 1);
            }
        }
    }
    Ok(PermutationGroup::assemble(degree, generators.to_vec(), elements, members))
}

impl PermutationGroup {
    fn assemble(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
        members: HashSet<Permutation>,
    ) -> Self {
        let packed = (degree <= 16).then(|| elements.iter().map(|e| e.packed().unwrap()).collect());
        Self { degree, generators, elements, members, packed }
    }

    /// Wraps an element list already known to be a group.
    pub(crate) fn from_closed_elements(
        degree: usize,
        generators: Vec<Permutation>,
        elements: Vec<Permutation>,
    ) -> Self {
        let members = elements.iter().cloned().collect();
        Self::assemble(degree, generators, elements, members)
    }

    pub fn generate(degree: usize, generators: &[Permutation]) -> Result<Self, PermError> {
        group_closure(degree, generators, DEFAULT_ORDER_CAP)
    }

    /// Closure of generators given in cycle notation.
    pub fn from_cycle_strings<S: AsRef<str>>(degree: usize, generators: &[S]) -> Result<Self, PermError> {
        let gens =
            generators.iter().map(|g| Permutation::parse_cycles(g.as_ref(), degree)).collect::<Result<Vec<_>, _>>()?;
        Self::generate(degree, &gens)
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, &[]).expect("trivial group")
    }

    /// `S_n` generated by `(1 2)` and `(1 2 ... n)`.
    pub fn symmetric(degree: usize) -> Result<Self, PermError> {
        if degree < 2 {
            return Ok(Self::trivial(degree));
        }
        let transposition = swap(degree, 0, 1);
        let cycle = Permutation::from_zero_based_unchecked((0..degree).map(|i| ((i + 1) % degree) as u8).collect());
        Self::generate(degree, &[transposition, cycle])
    }

    /// `A_n` generated by 3-cycles `(1 2 i)`.
    pub fn alternating(degree: usize) -> Result<Self, PermError> {
        let gens: Vec<Permutation> = (2..degree)
            .map(|i| {
                let mut images: Vec<u8> = (0..degree as u8).collect();
                images[0] = 1;
                images[1] = i as u8;
                images[i] = 0;
                Permutation::from_zero_based_unchecked(images)
            })
            .collect();
        Self::generate(degree, &gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, perm: &Permutation) -> bool {
        self.members.contains(perm)
    }

    pub fn is_subgroup_of(&self, other: &PermutationGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|e| other.contains(e))
    }

    /// True if every element is an even permutation.
    pub fn is_even(&self) -> bool {
        self.generators.iter().all(Permutation::is_even)
    }

    /// `τ G τ⁻¹`.
    pub fn conjugate_by(&self, tau: &Permutation) -> PermutationGroup {
        let generators = self.generators.iter().map(|g| g.conjugate_by(tau)).collect();
        let elements = self.elements.iter().map(|g| g.conjugate_by(tau)).collect();
        Self::from_closed_elements(self.degree, generators, elements)
    }

    /// Orbits on `{1..n}` as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g.zero_based()[x] as usize;
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            let mut orbit: Vec<usize> = orbit.into_iter().map(|x| x + 1).collect();
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Sorted orbit sizes.
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    /// Sorted multiset of element cycle types, a conjugation invariant.
    pub fn cycle_type_profile(&self) -> Vec<(Vec<usize>, usize)> {
        let mut counts = std::collections::BTreeMap::new();
        for e in &self.elements {
            *counts.entry(e.cycle_type()).or_insert(0usize) += 1;
        }
        counts.into_iter().collect()
    }

    /// A generating set found greedily: the stored generators, pruned of
    /// redundant ones.
    pub fn reduced_generators(&self) -> Vec<Permutation> {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut span = PermutationGroup::trivial(self.degree);
        for g in &self.generators {
            if !span.contains(g) {
                gens.push(g.clone());
                span = PermutationGroup::generate(self.degree, &gens).expect("subgroup closure");
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    pub(crate) fn packed_elements(&self) -> Option<&[PackedPermutation]> {
        self.packed.as_deref()
    }

    /// Representatives of all right cosets `Gσ` in `S_n`, the least-ranked
    /// element of each coset, in increasing rank.
    pub fn right_coset_representatives(&self) -> Result<Vec<Permutation>, PermError> {
        if self.degree > symmetric::MAX_INDEXED_DEGREE {
            return Err(PermError::DegreeTooLarge(self.degree));
        }
        let total = symmetric::factorial_usize(self.degree);
        let mut covered = RankSet::new(total);
        let mut reps = Vec::with_capacity(total / self.order());
        for r in 0..total {
            if covered.contains(r) {
                continue;
            }
            let sigma = symmetric::unrank(r, self.degree);
            for g in &self.elements {
                covered.insert(symmetric::rank(&g.compose(&sigma)));
            }
            reps.push(sigma);
        }
        Ok(reps)
    }

    /// Derangement counts of every right coset, in the order of
    /// [`right_coset_representatives`](Self::right_coset_representatives).
    pub fn coset_derangement_counts(&self) -> Result<Vec<(Permutation, usize)>, PermError> {
        let reps = self.right_coset_representatives()?;
        Ok(reps
            .into_par_iter()
            .map(|r| {
                let count = Coset::new(self, r.clone()).expect("same degree").derangement_count();
                (r, count)
            })
            .collect())
    }
}

fn swap(degree: usize, a: usize, b: usize) -> Permutation {
    let mut images: Vec<u8> = (0..degree as u8).collect();
    images.swap(a, b);
    Permutation::from_zero_based_unchecked(images)
}

/// The right coset `Gσ = { g ∘ σ : g ∈ G }`.
///
/// Right cosets lose nothing: `σ ↦ σ⁻¹` maps `Gσ` onto the left coset
/// `σ⁻¹G` and preserves being a derangement.
#[derive(Clone, Debug)]
pub struct Coset<'a> {
    group: &'a PermutationGroup,
    representative: Permutation,
}

impl<'a> Coset<'a> {
    pub fn new(group: &'a PermutationGroup, representative: Permutation) -> Result<Self, PermError> {
        if representative.degree() != group.degree() {
            return Err(PermError::DegreeMismatch { expected: group.degree(), found: representative.degree() });
        }
        Ok(Self { group, representative })
    }

    pub fn group(&self) -> &PermutationGroup {
        self.group
    }

    pub fn representative(&self) -> &Permutation {
        &self.representative
    }

    pub fn len(&self) -> usize {
        self.group.order()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn elements(&self) -> impl Iterator<Item = Permutation> + '_ {
        self.group.elements().iter().map(|g| g.compose(&self.representative))
    }

    /// Number of fixed-point-free elements `g ∘ σ`.
    ///
    /// `g ∘ σ` fixes `i` iff `g(j) = σ⁻¹(j)` at `j = σ(i)`, so the count is
    /// the number of group elements agreeing with `σ⁻¹` nowhere.
    pub fn derangement_count(&self) -> usize {
        let inverse = self.representative.inverse();
        match (self.group.packed_elements(), inverse.packed()) {
            (Some(packed), Some(target)) => packed.iter().filter(|g| !g.agrees_somewhere(&target)).count(),
            _ => self.elements().filter(Permutation::is_derangement).count(),
        }
    }
}

/// Proportion of derangements in a coset, reduced.
pub fn coset_derangement_proportion(coset: &Coset<'_>) -> ExactRational {
    ExactRational::new(coset.derangement_count() as u64, coset.len() as u64).expect("nonempty coset")
}
