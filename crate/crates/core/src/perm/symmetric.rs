//! Lexicographic ranking of `S_n`, used to index element sets as bitmaps.

use super::Permutation;

/// Degrees for which `n!` bitmaps over `S_n` are materialized.
pub const MAX_INDEXED_DEGREE: usize = 11;

pub fn factorial_usize(n: usize) -> usize {
    (1..=n).product()
}

/// Lexicographic rank of a permutation among all permutations of its degree
/// (identity has rank 0).
pub fn rank(perm: &Permutation) -> usize {
    let images = perm.zero_based();
    let n = images.len();
    let mut used: u32 = 0;
    let mut r = 0usize;
    for (i, &x) in images.iter().enumerate() {
        let smaller_unused = (x as u32 - (used & ((1u32 << x) - 1)).count_ones()) as usize;
        r = r * (n - i) + smaller_unused;
        used |= 1 << x;
    }
    r
}

/// Inverse of [`rank`].
pub fn unrank(mut r: usize, degree: usize) -> Permutation {
    let mut digits = vec![0usize; degree];
    for i in (0..degree).rev() {
        let base = degree - i;
        digits[i] = r % base;
        r /= base;
    }
    let mut available: Vec<u8> = (0..degree as u8).collect();
    let images = digits.into_iter().map(|d| available.remove(d)).collect();
    Permutation::from_zero_based_unchecked(images)
}

/// All permutations of the given degree in rank order.
pub fn all_permutations(degree: usize) -> impl Iterator<Item = Permutation> {
    (0..factorial_usize(degree)).map(move |r| unrank(r, degree))
}

/// Fixed-size bitmap over ranks of `S_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RankSet {
    words: Vec<u64>,
}

impl RankSet {
    pub fn new(universe: usize) -> Self {
        Self { words: vec![0; universe.div_ceil(64)] }
    }

    pub fn insert(&mut self, r: usize) -> bool {
        let (w, b) = (r / 64, r % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn contains(&self, r: usize) -> bool {
        self.words[r / 64] & (1 << (r % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset_of(&self, other: &RankSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}
