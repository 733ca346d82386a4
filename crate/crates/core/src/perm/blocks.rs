use serde::Serialize;

use super::{PermError, PermutationGroup};

/// A partition of `{1..n}` into blocks of equal size, each block sorted and
/// blocks ordered by least point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    degree: usize,
    blocks: Vec<Vec<usize>>,
}

impl BlockSystem {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Number of blocks `l`.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Common block size `k`.
    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    /// True if every generator maps each block onto a block.
    pub fn is_invariant_under(&self, group: &PermutationGroup) -> bool {
        let mut block_of = vec![0usize; self.degree];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                block_of[x - 1] = b;
            }
        }
        group.generators().iter().all(|g| {
            self.blocks.iter().all(|block| {
                let target = block_of[g.apply(block[0]) - 1];
                block.iter().all(|&x| block_of[g.apply(x) - 1] == target)
            })
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BlockOutcome {
    /// The only invariant partition joining the seed pair is `{1..n}`.
    Trivial,
    Blocks(BlockSystem),
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; returns false if already merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (keep, drop) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[drop] = keep;
        true
    }
}

/// Finest `G`-invariant partition in which the 1-based points `a` and `b`
/// share a block.
///
/// Every merge of two classes is pushed through each generator until no new
/// merges occur; the resulting partition is checked for invariance before
/// it is returned.
pub fn minimal_block_system(group: &PermutationGroup, a: usize, b: usize) -> Result<BlockOutcome, PermError> {
    let n = group.degree();
    if !group.is_transitive() {
        return Err(PermError::NotTransitive);
    }
    for p in [a, b] {
        if p == 0 || p > n {
            return Err(PermError::PointOutOfRange { point: p, degree: n });
        }
    }
    if a == b {
        return Err(PermError::DegenerateSeed(a));
    }
    let mut classes = UnionFind::new(n);
    classes.union(a - 1, b - 1);
    let mut pending = vec![(a - 1, b - 1)];
    while let Some((x, y)) = pending.pop() {
        for g in group.generators() {
            let (gx, gy) = (g.zero_based()[x] as usize, g.zero_based()[y] as usize);
            if classes.union(gx, gy) {
                pending.push((gx, gy));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for x in 0..n {
        let root = classes.find(x);
        if index_of_root[root] == usize::MAX {
            index_of_root[root] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index_of_root[root]].push(x + 1);
    }
    if blocks.len() == 1 {
        return Ok(BlockOutcome::Trivial);
    }
    let system = BlockSystem { degree: n, blocks };
    let size = system.block_size();
    if !system.blocks.iter().all(|b| b.len() == size) || !system.is_invariant_under(group) {
        return Err(PermError::InvalidBlockSystem);
    }
    Ok(BlockOutcome::Blocks(system))
}

/// Transitive with no nontrivial block system. Degree 1 counts as
/// primitive.
pub fn is_primitive(group: &PermutationGroup) -> bool {
    primitivity_witness(group).map(|w| w.is_none()).unwrap_or(false)
}

/// `Ok(None)` for primitive groups, `Ok(Some(blocks))` with a nontrivial
/// block system for imprimitive transitive ones, an error when intransitive.
pub fn primitivity_witness(group: &PermutationGroup) -> Result<Option<BlockSystem>, PermError> {
    if !group.is_transitive() {
        return Err(PermError::NotTransitive);
    }
    for j in 2..=group.degree() {
        if let BlockOutcome::Blocks(system) = minimal_block_system(group, 1, j)? {
            return Ok(Some(system));
        }
    }
    Ok(None)
}
