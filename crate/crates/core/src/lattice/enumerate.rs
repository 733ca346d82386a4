//! Exhaustive subgroup enumeration of `S_n` by cyclic extension.
//!
//! Every subgroup `K = ⟨g_1, ..., g_r⟩` is reached along the chain
//! `1 < ⟨g_1⟩ < ⟨g_1, g_2⟩ < ...`, each step adjoining one element. The
//! search therefore extends subgroups by single elements until nothing new
//! appears. It runs on conjugacy class representatives only: if
//! `τ K_i τ⁻¹ = H`, then `τ ⟨K_i, g⟩ τ⁻¹ = ⟨H, τ g τ⁻¹⟩`, so extending each
//! representative by every element reaches every class, and the full list
//! is recovered by conjugating the representatives.

use std::collections::HashMap;

use rayon::prelude::*;

use super::LatticeError;
use crate::perm::symmetric::RankSet;
use crate::perm::{Permutation, PermutationGroup};

/// Largest degree accepted by [`all_subgroups`]; `S_7` has 11300 subgroups.
pub const MAX_LATTICE_DEGREE: usize = 7;

const WIDTH: usize = 8;

/// Permutation of degree at most 8 as a fixed array, 0-based.
type Small = [u8; WIDTH];

fn compose(a: &Small, b: &Small, n: usize) -> Small {
    let mut out = [0u8; WIDTH];
    for i in 0..n {
        out[i] = a[b[i] as usize];
    }
    out
}

fn conjugate(g: &Small, tau: &Small, n: usize) -> Small {
    let mut out = [0u8; WIDTH];
    for i in 0..n {
        out[tau[i] as usize] = tau[g[i] as usize];
    }
    out
}

fn small_rank(p: &Small, n: usize) -> usize {
    let mut used: u32 = 0;
    let mut r = 0usize;
    for (i, &image) in p.iter().enumerate().take(n) {
        let x = image as u32;
        r = r * (n - i) + (x - (used & ((1 << x) - 1)).count_ones()) as usize;
        used |= 1 << x;
    }
    r
}

fn to_small(p: &Permutation) -> Small {
    let mut out = [0u8; WIDTH];
    out[..p.degree()].copy_from_slice(p.zero_based());
    out
}

fn to_permutation(p: &Small, n: usize) -> Permutation {
    Permutation::from_zero_based_unchecked(p[..n].to_vec())
}

/// Element table for `S_n` in rank order.
struct Universe {
    n: usize,
    elements: Vec<Small>,
}

impl Universe {
    fn new(n: usize) -> Self {
        let elements = crate::perm::symmetric::all_permutations(n).map(|p| to_small(&p)).collect();
        Self { n, elements }
    }

    fn size(&self) -> usize {
        self.elements.len()
    }

    fn rank(&self, p: &Small) -> usize {
        small_rank(p, self.n)
    }
}

/// A subgroup found during the search: generators (as ranks) and members.
#[derive(Clone, Debug)]
struct Found {
    generators: Vec<usize>,
    members: RankSet,
    /// Member ranks in coset-discovery order; identity first.
    listing: Vec<usize>,
}

/// `⟨H, g⟩` by closing `H` under right multiplication coset by coset:
/// the union of cosets `H r` is closed once `r s` lands inside it for every
/// coset representative `r` and generator `s`.
fn extend(universe: &Universe, h: &Found, g: usize) -> Found {
    let n = universe.n;
    let mut generators = h.generators.clone();
    generators.push(g);
    let mut members = h.members.clone();
    let mut listing = h.listing.clone();
    let base: Vec<Small> = h.listing.iter().map(|&r| universe.elements[r]).collect();
    let mut reps: Vec<Small> = vec![universe.elements[0]];
    let mut i = 0;
    while i < reps.len() {
        for &s in &generators {
            let candidate = compose(&reps[i], &universe.elements[s], n);
            let rank = universe.rank(&candidate);
            if members.contains(rank) {
                continue;
            }
            for x in &base {
                let y = universe.rank(&compose(x, &candidate, n));
                members.insert(y);
                listing.push(y);
            }
            reps.push(candidate);
        }
        i += 1;
    }
    Found { generators, members, listing }
}

fn conjugate_found(universe: &Universe, h: &Found, tau: &Small) -> (RankSet, Vec<usize>) {
    let n = universe.n;
    let mut members = RankSet::new(universe.size());
    for &r in &h.listing {
        members.insert(universe.rank(&conjugate(&universe.elements[r], tau, n)));
    }
    let generators = h.generators.iter().map(|&r| universe.rank(&conjugate(&universe.elements[r], tau, n))).collect();
    (members, generators)
}

/// One subgroup of `S_n` inside a [`SubgroupLattice`].
#[derive(Clone, Debug)]
pub struct LatticeSubgroup {
    order: usize,
    generators: Vec<Permutation>,
    members: RankSet,
    class: usize,
}

impl LatticeSubgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Index of the conjugacy class in [`SubgroupLattice::class_representatives`].
    pub fn class(&self) -> usize {
        self.class
    }

    /// Member ranks in increasing order (lexicographic order of images).
    pub fn member_ranks(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn contains_rank(&self, rank: usize) -> bool {
        self.members.contains(rank)
    }

    /// Materializes the subgroup with elements in rank order.
    pub fn to_group(&self, degree: usize) -> PermutationGroup {
        let elements = self.members.iter().map(|r| crate::perm::symmetric::unrank(r, degree)).collect();
        PermutationGroup::from_closed_elements(degree, self.generators.clone(), elements)
    }
}

/// Every subgroup of `S_n`, each listed once, with conjugacy classes.
///
/// Subgroups are sorted by order, then by their sorted list of element
/// ranks; each class is represented by its first member in that order.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    degree: usize,
    subgroups: Vec<LatticeSubgroup>,
    class_representatives: Vec<usize>,
}

impl SubgroupLattice {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn subgroups(&self) -> &[LatticeSubgroup] {
        &self.subgroups
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    /// Indices into [`subgroups`](Self::subgroups), one per class.
    pub fn class_representatives(&self) -> &[usize] {
        &self.class_representatives
    }

    pub fn class_count(&self) -> usize {
        self.class_representatives.len()
    }

    pub fn representative_groups(&self) -> Vec<PermutationGroup> {
        self.class_representatives.iter().map(|&i| self.subgroups[i].to_group(self.degree)).collect()
    }

    /// Number of subgroups in each class, aligned with
    /// [`class_representatives`](Self::class_representatives).
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_representatives.len()];
        for s in &self.subgroups {
            sizes[s.class] += 1;
        }
        sizes
    }
}

/// Enumerates all subgroups of `S_n` for `n <= 7`.
pub fn all_subgroups(degree: usize) -> Result<SubgroupLattice, LatticeError> {
    if degree > MAX_LATTICE_DEGREE {
        return Err(LatticeError::DegreeAboveLimit { degree, limit: MAX_LATTICE_DEGREE });
    }
    let universe = Universe::new(degree);
    let size = universe.size();
    let cyclic = CyclicSubgroups::new(&universe);

    let mut trivial_members = RankSet::new(size);
    trivial_members.insert(0);
    let trivial = Found { generators: Vec::new(), members: trivial_members, listing: vec![0] };
    // Class representatives with their normalizers in S_n (as ranks).
    let mut classes: Vec<(Found, Vec<usize>)> = Vec::new();
    // Every subgroup found so far, conjugates included: members -> (class, generator ranks).
    let mut known: HashMap<RankSet, (usize, Vec<usize>)> = HashMap::new();
    let normalizer = register_class(&universe, &trivial, 0, &mut known);
    classes.push((trivial, normalizer));

    let mut next = 0;
    while next < classes.len() {
        let (h, normalizer) = classes[next].clone();
        next += 1;
        let candidates = cyclic.orbit_representatives(&universe, &h, &normalizer);
        let extensions: Vec<Found> = candidates.par_iter().map(|&g| extend(&universe, &h, g)).collect();
        for k in extensions {
            if known.contains_key(&k.members) {
                continue;
            }
            let class = classes.len();
            let normalizer = register_class(&universe, &k, class, &mut known);
            classes.push((k, normalizer));
        }
    }

    let mut subgroups: Vec<(Vec<usize>, LatticeSubgroup)> = known
        .into_iter()
        .map(|(members, (class, generators))| {
            let ranks: Vec<usize> = members.iter().collect();
            let sub = LatticeSubgroup {
                order: ranks.len(),
                generators: generators.iter().map(|&r| to_permutation(&universe.elements[r], degree)).collect(),
                members,
                class,
            };
            (ranks, sub)
        })
        .collect();
    subgroups.sort_by(|(ra, a), (rb, b)| a.order.cmp(&b.order).then_with(|| ra.cmp(rb)));

    // Renumber classes by first appearance in canonical order.
    let mut renumber = vec![usize::MAX; classes.len()];
    let mut class_representatives = Vec::new();
    let subgroups: Vec<LatticeSubgroup> = subgroups
        .into_iter()
        .enumerate()
        .map(|(i, (_, mut sub))| {
            if renumber[sub.class] == usize::MAX {
                renumber[sub.class] = class_representatives.len();
                class_representatives.push(i);
            }
            sub.class = renumber[sub.class];
            sub
        })
        .collect();
    Ok(SubgroupLattice { degree, subgroups, class_representatives })
}

/// The cyclic subgroups of `S_n`, each identified by its least-rank
/// generator.
struct CyclicSubgroups {
    /// Generator rank per subgroup id; the trivial subgroup is omitted.
    generators: Vec<usize>,
    /// Subgroup id of `⟨x⟩` for every element rank `x`.
    id_of: Vec<u32>,
}

impl CyclicSubgroups {
    const TRIVIAL: u32 = u32::MAX;

    fn new(universe: &Universe) -> Self {
        let n = universe.n;
        let mut id_of = vec![Self::TRIVIAL; universe.size()];
        let mut generators = Vec::new();
        for r in 1..universe.size() {
            if id_of[r] != Self::TRIVIAL {
                continue;
            }
            let g = universe.elements[r];
            let mut powers = vec![r];
            let mut x = compose(&g, &g, n);
            while universe.rank(&x) != 0 {
                powers.push(universe.rank(&x));
                x = compose(&x, &g, n);
            }
            // Generators of the same cyclic group are the powers coprime to the order.
            let order = powers.len() + 1;
            let id = generators.len() as u32;
            for (k, &p) in powers.iter().enumerate() {
                if num_integer::gcd(k + 1, order) == 1 {
                    id_of[p] = id;
                }
            }
            generators.push(r);
        }
        Self { generators, id_of }
    }

    /// One generator per orbit of the normalizer `N(H)` on cyclic subgroups
    /// not contained in `H`. Adjoining conjugate elements under `N(H)`
    /// yields conjugate subgroups, so the other orbit members add nothing.
    fn orbit_representatives(&self, universe: &Universe, h: &Found, normalizer: &[usize]) -> Vec<usize> {
        let n = universe.n;
        let mut visited = vec![false; self.generators.len()];
        let mut representatives = Vec::new();
        for (id, &g) in self.generators.iter().enumerate() {
            if visited[id] || h.members.contains(g) {
                continue;
            }
            representatives.push(g);
            let gs = universe.elements[g];
            for &t in normalizer {
                let image = conjugate(&gs, &universe.elements[t], n);
                visited[self.id_of[universe.rank(&image)] as usize] = true;
            }
        }
        representatives
    }
}

/// Inserts every conjugate of `k` into `known` under the given class and
/// returns the normalizer of `k` in `S_n`.
fn register_class(
    universe: &Universe,
    k: &Found,
    class: usize,
    known: &mut HashMap<RankSet, (usize, Vec<usize>)>,
) -> Vec<usize> {
    let conjugates: Vec<(RankSet, Vec<usize>)> =
        universe.elements.par_iter().map(|tau| conjugate_found(universe, k, tau)).collect();
    let mut normalizer = Vec::new();
    for (t, (members, generators)) in conjugates.into_iter().enumerate() {
        if members == k.members {
            normalizer.push(t);
        }
        known.entry(members).or_insert((class, generators));
    }
    normalizer
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_rank_matches_generic_rank() {
        for p in crate::perm::symmetric::all_permutations(5) {
            assert_eq!(small_rank(&to_small(&p), 5), crate::perm::symmetric::rank(&p));
        }
    }

    #[test]
    fn s3_has_six_subgroups() {
        let lattice = all_subgroups(3).unwrap();
        let orders: Vec<usize> = lattice.subgroups().iter().map(LatticeSubgroup::order).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(lattice.class_count(), 4);
    }

    #[test]
    fn tiny_degrees() {
        assert_eq!(all_subgroups(0).unwrap().len(), 1);
        assert_eq!(all_subgroups(1).unwrap().len(), 1);
        assert_eq!(all_subgroups(2).unwrap().len(), 2);
    }

    #[test]
    fn s4_counts() {
        let lattice = all_subgroups(4).unwrap();
        assert_eq!(lattice.len(), 30);
        assert_eq!(lattice.class_count(), 11);
    }

    #[test]
    fn degree_limit() {
        assert!(matches!(all_subgroups(8), Err(LatticeError::DegreeAboveLimit { degree: 8, .. })));
    }

    #[test]
    fn subgroups_are_closed() {
        let lattice = all_subgroups(4).unwrap();
        for sub in lattice.subgroups() {
            let g = sub.to_group(4);
            let reclosed = PermutationGroup::generate(4, sub.generators()).unwrap();
            assert_eq!(reclosed, g);
        }
    }
}
