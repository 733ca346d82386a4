use std::fmt;

use serde::Serialize;

use super::PermError;

/// Largest supported degree; images are stored as bytes.
pub const MAX_DEGREE: usize = 255;

/// A bijection of `{1, ..., n}`, stored as a flat image array.
///
/// Points are 1-based in the public API and in cycle notation; internally
/// `images[i] = σ(i + 1) - 1`. Composition follows function notation:
/// `a.compose(&b)` is `a ∘ b`, applying `b` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree <= MAX_DEGREE);
        Self { images: (0..degree as u8).collect() }
    }

    /// Builds a permutation from 1-based images `σ(1), ..., σ(n)`.
    pub fn from_images(images: &[usize]) -> Result<Self, PermError> {
        let n = images.len();
        if n > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(n));
        }
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &image in images {
            if image == 0 || image > n {
                return Err(PermError::PointOutOfRange { point: image, degree: n });
            }
            if std::mem::replace(&mut seen[image - 1], true) {
                return Err(PermError::RepeatedPoint(image));
            }
            out.push((image - 1) as u8);
        }
        Ok(Self { images: out })
    }

    /// Builds from 0-based images without validation.
    pub(crate) fn from_zero_based_unchecked(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i == x as usize)
        });
        Self { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(point)` for a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// 0-based image table.
    pub fn zero_based(&self) -> &[u8] {
        &self.images
    }

    /// 1-based images `σ(1), ..., σ(n)`.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in composition");
        Permutation { images: other.images.iter().map(|&j| self.images[j as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    /// `τ ∘ self ∘ τ⁻¹`.
    pub fn conjugate_by(&self, tau: &Permutation) -> Permutation {
        let mut out = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[tau.images[i] as usize] = tau.images[j as usize];
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.images.iter().enumerate().filter(|&(i, &j)| i == j as usize).count()
    }

    pub fn is_derangement(&self) -> bool {
        self.fixed_point_count() == 0
    }

    /// Disjoint cycles of length at least 2, each starting at its smallest
    /// point, sorted by that point. Points are 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Multiset of cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lengths: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        lengths.extend(std::iter::repeat_n(1, self.fixed_point_count()));
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn sign(&self) -> i8 {
        let transpositions: usize = self.cycles().iter().map(|c| c.len() - 1).sum();
        if transpositions.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.sign() == 1
    }

    /// Packs a permutation of degree at most 16 into nibbles, point `i` in
    /// bits `4i..4i+4`.
    pub fn packed(&self) -> Option<PackedPermutation> {
        PackedPermutation::new(self)
    }

    /// Parses disjoint-cycle notation at the given degree.
    ///
    /// Grammar: a sequence of cycles `( ... )`, optionally separated by
    /// whitespace. Inside a cycle, points are separated by commas and/or
    /// whitespace; a cycle containing no separator is read one decimal digit
    /// per point, so `(1623)(45)` and `(1,6,2,3)(4,5)` are equivalent. `()`
    /// and the empty string denote the identity. Cycles must be disjoint.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, PermError> {
        if degree > MAX_DEGREE {
            return Err(PermError::DegreeTooLarge(degree));
        }
        let mut images: Vec<u8> = (0..degree as u8).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        while !rest.is_empty() {
            let Some(after_open) = rest.strip_prefix('(') else {
                return Err(PermError::Malformed(text.to_string()));
            };
            let Some(close) = after_open.find(')') else {
                return Err(PermError::Malformed(text.to_string()));
            };
            let body = &after_open[..close];
            rest = after_open[close + 1..].trim_start();
            let points = parse_cycle_body(body, text)?;
            for &p in &points {
                if p == 0 || p > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut used[p - 1], true) {
                    return Err(PermError::RepeatedPoint(p));
                }
            }
            for (i, &p) in points.iter().enumerate() {
                let next = points[(i + 1) % points.len()];
                images[p - 1] = (next - 1) as u8;
            }
        }
        Ok(Permutation { images })
    }

    /// Canonical disjoint-cycle text: fixed points omitted, each cycle
    /// starting at its smallest point, cycles ordered by that point. Points
    /// are written as bare digits when the degree is below 10 and
    /// comma-separated otherwise. The identity is `()`.
    pub fn format_cycles(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        let separator = if self.degree() < 10 { "" } else { "," };
        cycles
            .iter()
            .map(|c| {
                let body: Vec<String> = c.iter().map(ToString::to_string).collect();
                format!("({})", body.join(separator))
            })
            .collect()
    }
}

fn parse_cycle_body(body: &str, text: &str) -> Result<Vec<usize>, PermError> {
    let malformed = || PermError::Malformed(text.to_string());
    let has_separator = body.contains(',') || body.trim().contains(char::is_whitespace);
    let points: Vec<usize> = if has_separator {
        body.split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| malformed()))
            .collect::<Result<_, _>>()?
    } else {
        body.trim()
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(malformed))
            .collect::<Result<_, _>>()?
    };
    if has_separator && points.is_empty() {
        return Err(malformed());
    }
    Ok(points)
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_cycles())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.format_cycles(), self.degree())
    }
}

impl Serialize for Permutation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&self.format_cycles())
    }
}

/// Nibble-packed permutation of degree at most 16, used where fixed points
/// are counted in bulk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PackedPermutation {
    bits: u64,
    degree: u8,
}

const LOW_NIBBLE_BITS: u64 = 0x1111_1111_1111_1111;

impl PackedPermutation {
    pub fn new(perm: &Permutation) -> Option<Self> {
        if perm.degree() > 16 {
            return None;
        }
        let bits = perm.images.iter().enumerate().fold(0u64, |acc, (i, &j)| acc | (u64::from(j) << (4 * i)));
        Some(Self { bits, degree: perm.degree() as u8 })
    }

    fn mask(&self) -> u64 {
        if self.degree == 16 {
            LOW_NIBBLE_BITS
        } else {
            LOW_NIBBLE_BITS & ((1u64 << (4 * self.degree)) - 1)
        }
    }

    /// True if `self(i) == other(i)` for some point `i`.
    pub fn agrees_somewhere(&self, other: &PackedPermutation) -> bool {
        let mut x = self.bits ^ other.bits;
        // Fold each nibble onto its low bit: the bit is set iff the nibble is nonzero.
        x |= x >> 1;
        x |= x >> 2;
        (x & self.mask()) != self.mask()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn parse_compact_notation() {
        let s = p("(1623)(45)", 6);
        assert_eq!(s.images(), vec![6, 3, 1, 5, 4, 2]);
        assert_eq!(s.format_cycles(), "(1623)(45)");
        assert_eq!(p("(1,6,2,3) (4 5)", 6), s);
    }

    #[test]
    fn parse_identity_forms() {
        assert!(p("", 4).is_identity());
        assert!(p("()", 4).is_identity());
        assert!(p("(3)", 4).is_identity());
        assert_eq!(p("", 4).format_cycles(), "()");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Permutation::parse_cycles("(12", 3), Err(PermError::Malformed(_))));
        assert!(matches!(Permutation::parse_cycles("12", 3), Err(PermError::Malformed(_))));
        assert!(matches!(Permutation::parse_cycles("(1a)", 3), Err(PermError::Malformed(_))));
        assert!(matches!(Permutation::parse_cycles("(12)(23)", 3), Err(PermError::RepeatedPoint(2))));
        assert!(matches!(Permutation::parse_cycles("(121)", 3), Err(PermError::RepeatedPoint(1))));
        assert!(matches!(
            Permutation::parse_cycles("(14)", 3),
            Err(PermError::PointOutOfRange { point: 4, degree: 3 })
        ));
        assert!(matches!(Permutation::parse_cycles("(0,1)", 3), Err(PermError::PointOutOfRange { point: 0, .. })));
    }

    #[test]
    fn large_degree_uses_commas() {
        let s = p("(1,10,11)(2,3)", 11);
        assert_eq!(s.format_cycles(), "(1,10,11)(2,3)");
        assert_eq!(s.apply(11), 1);
    }

    #[test]
    fn fixed_points() {
        assert_eq!(Permutation::identity(5).fixed_point_count(), 5);
        assert_eq!(p("(12)(34)", 5).fixed_point_count(), 1);
        assert_eq!(p("(12345)", 5).fixed_point_count(), 0);
    }

    #[test]
    fn composition_is_function_composition() {
        let a = p("(12)", 3);
        let b = p("(23)", 3);
        // a∘b sends 2 -> 3 -> 3, 3 -> 2 -> 1.
        let ab = a.compose(&b);
        assert_eq!(ab.apply(2), 3);
        assert_eq!(ab.apply(3), 1);
        assert!(ab.compose(&ab.inverse()).is_identity());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let g = p("(123)", 4);
        let tau = p("(14)", 4);
        assert_eq!(g.conjugate_by(&tau), p("(423)", 4));
        assert_eq!(g.conjugate_by(&tau), tau.compose(&g).compose(&tau.inverse()));
    }

    #[test]
    fn sign_and_cycle_type() {
        let s = p("(1623)(45)", 6);
        assert_eq!(s.sign(), 1);
        assert_eq!(s.cycle_type(), vec![4, 2]);
        assert_eq!(s.order(), 4);
        assert_eq!(p("(12)", 3).sign(), -1);
    }

    #[test]
    fn packed_agreement_matches_direct_check() {
        let a = p("(1234)", 6);
        let b = p("(12)", 6);
        // Both fix 5 and 6.
        assert!(a.packed().unwrap().agrees_somewhere(&b.packed().unwrap()));
        let c = p("(56)", 6);
        assert!(!a.packed().unwrap().agrees_somewhere(&c.packed().unwrap()));
        let full = p("(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16)", 16);
        assert!(!full.packed().unwrap().agrees_somewhere(&Permutation::identity(16).packed().unwrap()));
    }
}
