//! Sets of vertices drawn from `[1, 128]`, stored as a single `u128`.
//!
//! Vertex `v` occupies bit `v - 1`. All set operations are word operations.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported vertex label.
pub const MAX_VERTEX: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u128);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u128) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// `{v}`. Panics if `v` is not in `[1, 128]`.
    pub fn singleton(v: usize) -> Self {
        assert!((1..=MAX_VERTEX).contains(&v), "vertex {v} out of range");
        VertexSet(1u128 << (v - 1))
    }

    /// The interval `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: usize, hi: usize) -> Self {
        if lo > hi {
            return Self::EMPTY;
        }
        assert!(lo >= 1 && hi <= MAX_VERTEX, "interval [{lo}, {hi}] out of range");
        let width = hi - lo + 1;
        let mask = if width == 128 { u128::MAX } else { (1u128 << width) - 1 };
        VertexSet(mask << (lo - 1))
    }

    /// Full universe `[1, n]`.
    pub fn universe(n: usize) -> Self {
        Self::interval(1, n)
    }

    pub fn insert(&mut self, v: usize) {
        *self = self.union(Self::singleton(v));
    }

    pub fn remove(&mut self, v: usize) {
        *self = self.difference(Self::singleton(v));
    }

    pub fn with(self, v: usize) -> Self {
        self.union(Self::singleton(v))
    }

    pub fn without(self, v: usize) -> Self {
        self.difference(Self::singleton(v))
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTEX).contains(&v) && self.0 >> (v - 1) & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 128 - self.0.leading_zeros() as usize)
    }

    /// Elements in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Self::EMPTY, VertexSet::with)
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize + 1;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

/// Lexicographic order on the ascending element lists.
impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // Both lists agree below the lowest differing element x.
        let low = diff & diff.wrapping_neg();
        let above = !((low << 1).wrapping_sub(1));
        let (holder, other_bits) = if self.0 & low != 0 { (Ordering::Less, other.0) } else { (Ordering::Greater, self.0) };
        // The list holding x is smaller unless the other list ends before x's position.
        if other_bits & above != 0 {
            holder
        } else {
            holder.reverse()
        }
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
