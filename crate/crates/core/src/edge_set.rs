//! Fixed-width sets of edge indices.

use std::fmt;

/// Largest edge count any [`EdgeIndexSet`] can address.
pub const MAX_EDGES: usize = 128;

/// A set of edge indices backed by a 128-bit mask.
///
/// Matchings, extremal subgraphs and coloring certificates all speak edge
/// indices into a [`Graph`](crate::Graph)'s sorted edge list, so every one of
/// them is an `EdgeIndexSet`. Indices must be below [`MAX_EDGES`].
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeIndexSet(u128);

impl EdgeIndexSet {
    pub const EMPTY: EdgeIndexSet = EdgeIndexSet(0);

    /// The set `{0, 1, .., m-1}`.
    pub fn full(m: usize) -> Self {
        assert!(m <= MAX_EDGES, "edge set width {m} exceeds {MAX_EDGES}");
        if m == MAX_EDGES {
            EdgeIndexSet(u128::MAX)
        } else {
            EdgeIndexSet((1u128 << m) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        assert!(e < MAX_EDGES, "edge index {e} exceeds {MAX_EDGES}");
        EdgeIndexSet(1u128 << e)
    }

    pub const fn from_bits(bits: u128) -> Self {
        EdgeIndexSet(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < MAX_EDGES && (self.0 >> e) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, e: usize) {
        assert!(e < MAX_EDGES, "edge index {e} exceeds {MAX_EDGES}");
        self.0 |= 1u128 << e;
    }

    #[inline]
    pub fn remove(&mut self, e: usize) {
        if e < MAX_EDGES {
            self.0 &= !(1u128 << e);
        }
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        let mut s = self;
        s.insert(e);
        s
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn union(self, other: Self) -> Self {
        EdgeIndexSet(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Self) -> Self {
        EdgeIndexSet(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Self) -> Self {
        EdgeIndexSet(self.0 & !other.0)
    }

    /// Smallest member, if any.
    #[inline]
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    /// Members in increasing order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl FromIterator<usize> for EdgeIndexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = EdgeIndexSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl IntoIterator for EdgeIndexSet {
    type Item = usize;
    type IntoIter = Iter;

    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for EdgeIndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterator over the members of an [`EdgeIndexSet`].
#[derive(Clone)]
pub struct Iter(u128);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}
