use std::collections::HashSet;

use super::{PermError, Permutation, PermutationGroup};

/// Conjugation invariants used to bucket subgroups before any search:
/// order, sorted orbit sizes and the multiset of element cycle types.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConjugacyKey {
    pub order: usize,
    pub orbit_sizes: Vec<usize>,
    pub cycle_types: Vec<(Vec<usize>, usize)>,
}

pub fn conjugacy_key(group: &PermutationGroup) -> ConjugacyKey {
    ConjugacyKey { order: group.order(), orbit_sizes: group.orbit_sizes(), cycle_types: group.cycle_type_profile() }
}

/// True iff `τ G τ⁻¹ = H` for some `τ ∈ S_n`.
pub fn are_conjugate_subgroups(g: &PermutationGroup, h: &PermutationGroup) -> Result<bool, PermError> {
    Ok(find_conjugator(g, h)?.is_some())
}

/// Searches for `τ` with `τ G τ⁻¹ = H`.
///
/// Invariants only prune; a positive answer always comes with an explicit
/// `τ` that has been checked against the full element sets.
///
/// The search picks images `h_j ∈ H` for a generating set `g_j` of `G` and
/// solves `τ g_j = h_j τ` point by point. Replacing `τ` by `xτ` for
/// `x ∈ H` shows `h_1` may be restricted to one element per `H`-conjugacy
/// class.
pub fn find_conjugator(g: &PermutationGroup, h: &PermutationGroup) -> Result<Option<Permutation>, PermError> {
    if g.degree() != h.degree() {
        return Err(PermError::DegreeMismatch { expected: g.degree(), found: h.degree() });
    }
    if conjugacy_key(g) != conjugacy_key(h) {
        return Ok(None);
    }
    let n = g.degree();
    let gens = g.reduced_generators();
    if gens.is_empty() {
        return Ok(Some(Permutation::identity(n)));
    }
    let candidates: Vec<Vec<Permutation>> = gens
        .iter()
        .enumerate()
        .map(|(j, gj)| {
            let ct = gj.cycle_type();
            let matching: Vec<Permutation> = h.elements().iter().filter(|x| x.cycle_type() == ct).cloned().collect();
            if j == 0 {
                class_representatives(h, &matching)
            } else {
                matching
            }
        })
        .collect();
    let mut chosen: Vec<Permutation> = Vec::with_capacity(gens.len());
    let tau = search(&gens, &candidates, &mut chosen, n);
    Ok(tau.filter(|t| g.conjugate_by(t) == *h))
}

/// One representative per `H`-conjugacy class among `elements`.
fn class_representatives(h: &PermutationGroup, elements: &[Permutation]) -> Vec<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut reps = Vec::new();
    for x in elements {
        if seen.contains(x) {
            continue;
        }
        reps.push(x.clone());
        for y in h.elements() {
            seen.insert(x.conjugate_by(y));
        }
    }
    reps
}

fn search(
    gens: &[Permutation],
    candidates: &[Vec<Permutation>],
    chosen: &mut Vec<Permutation>,
    n: usize,
) -> Option<Permutation> {
    let j = chosen.len();
    if j == gens.len() {
        return solve_point_map(gens, chosen, n);
    }
    for hj in &candidates[j] {
        chosen.push(hj.clone());
        if solve_point_map(&gens[..=j], chosen, n).is_some() {
            if let Some(tau) = search(gens, candidates, chosen, n) {
                return Some(tau);
            }
        }
        chosen.pop();
    }
    None
}

/// Finds a bijection `τ` with `τ(g_j(x)) = h_j(τ(x))` for all `j`, `x`.
///
/// Choosing `τ(x)` for one point determines `τ` on the whole orbit of `x`
/// under `⟨g_j⟩`, so branching happens once per orbit.
fn solve_point_map(gs: &[Permutation], hs: &[Permutation], n: usize) -> Option<Permutation> {
    let mut tau = vec![u8::MAX; n];
    let mut used = vec![false; n];
    if assign_orbits(gs, hs, &mut tau, &mut used) {
        Some(Permutation::from_zero_based_unchecked(tau))
    } else {
        None
    }
}

fn assign_orbits(gs: &[Permutation], hs: &[Permutation], tau: &mut [u8], used: &mut [bool]) -> bool {
    let Some(x) = tau.iter().position(|&t| t == u8::MAX) else {
        return true;
    };
    for y in 0..tau.len() {
        if used[y] {
            continue;
        }
        let mut assigned = Vec::new();
        if propagate(gs, hs, tau, used, x, y, &mut assigned) && assign_orbits(gs, hs, tau, used) {
            return true;
        }
        for a in assigned {
            used[tau[a] as usize] = false;
            tau[a] = u8::MAX;
        }
    }
    false
}

fn propagate(
    gs: &[Permutation],
    hs: &[Permutation],
    tau: &mut [u8],
    used: &mut [bool],
    x: usize,
    y: usize,
    assigned: &mut Vec<usize>,
) -> bool {
    tau[x] = y as u8;
    used[y] = true;
    assigned.push(x);
    let mut i = assigned.len() - 1;
    while i < assigned.len() {
        let src = assigned[i];
        let dst = tau[src] as usize;
        for (g, h) in gs.iter().zip(hs) {
            let gx = g.zero_based()[src] as usize;
            let hy = h.zero_based()[dst];
            if tau[gx] == u8::MAX {
                if used[hy as usize] {
                    return false;
                }
                tau[gx] = hy;
                used[hy as usize] = true;
                assigned.push(gx);
            } else if tau[gx] != hy {
                return false;
            }
        }
        i += 1;
    }
    true
}
