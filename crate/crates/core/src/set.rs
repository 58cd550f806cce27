//! Small dense id sets used for marks, edges and vertices.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

/// A set of dense ids backed by a growable bitset.
///
/// Equality and hashing ignore the capacity of the underlying bitset.
/// Sets are ordered lexicographically on their sorted element lists, so
/// `{0,1} < {0,2}` and `{0} < {0,1}`.
#[derive(Clone, Default)]
pub struct IdSet(FixedBitSet);

/// Set of acceptance marks (colours).
pub type MarkSet = IdSet;
/// Set of edge ids; a cycle is represented by its edge set.
pub type EdgeSet = IdSet;
/// Set of vertex ids.
pub type VertexSet = IdSet;

impl IdSet {
    pub fn new() -> Self {
        IdSet(FixedBitSet::new())
    }

    pub fn with_capacity(n: usize) -> Self {
        IdSet(FixedBitSet::with_capacity(n))
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut b = FixedBitSet::with_capacity(n);
        b.insert_range(..);
        IdSet(b)
    }

    pub fn singleton(x: usize) -> Self {
        let mut s = Self::with_capacity(x + 1);
        s.insert(x);
        s
    }

    pub fn insert(&mut self, x: usize) -> bool {
        if x >= self.0.len() {
            self.0.grow(x + 1);
        }
        let had = self.0.contains(x);
        self.0.insert(x);
        !had
    }

    pub fn remove(&mut self, x: usize) {
        if x < self.0.len() {
            self.0.set(x, false);
        }
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(x)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn first(&self) -> Option<usize> {
        self.0.ones().next()
    }

    pub fn last(&self) -> Option<usize> {
        self.0.ones().last()
    }

    pub fn union_with(&mut self, other: &IdSet) {
        self.0.union_with(&other.0);
    }

    pub fn union(&self, other: &IdSet) -> IdSet {
        let mut r = self.clone();
        r.union_with(other);
        r
    }

    pub fn intersection(&self, other: &IdSet) -> IdSet {
        let mut r = self.clone();
        r.0.intersect_with(&other.0);
        r
    }

    pub fn difference(&self, other: &IdSet) -> IdSet {
        let mut r = self.clone();
        r.0.difference_with(&other.0);
        r
    }

    pub fn intersects(&self, other: &IdSet) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &IdSet) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Strict inclusion.
    pub fn is_proper_subset(&self, other: &IdSet) -> bool {
        self.is_subset(other) && self.len() < other.len()
    }

    /// Every element shifted up by `k`.
    pub fn shifted(&self, k: usize) -> IdSet {
        self.iter().map(|x| x + k).collect()
    }

    /// Elements in `[lo, hi)` shifted down by `lo`.
    pub fn window(&self, lo: usize, hi: usize) -> IdSet {
        self.iter()
            .filter(|&x| x >= lo && x < hi)
            .map(|x| x - lo)
            .collect()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl PartialEq for IdSet {
    fn eq(&self, other: &Self) -> bool {
        self.iter().eq(other.iter())
    }
}

impl Eq for IdSet {}

impl Hash for IdSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        for x in self.iter() {
            x.hash(state);
        }
        usize::MAX.hash(state);
    }
}

impl Ord for IdSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for IdSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for IdSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = IdSet::new();
        for x in iter {
            s.insert(x);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for IdSet {
    fn from(xs: [usize; N]) -> Self {
        xs.into_iter().collect()
    }
}

impl From<&[usize]> for IdSet {
    fn from(xs: &[usize]) -> Self {
        xs.iter().copied().collect()
    }
}

impl Extend<usize> for IdSet {
    fn extend<I: IntoIterator<Item = usize>>(&mut self, iter: I) {
        for x in iter {
            self.insert(x);
        }
    }
}

/// Keep only the inclusion-maximal sets, sorted and without duplicates.
pub fn maximal_sets(mut sets: Vec<IdSet>) -> Vec<IdSet> {
    sets.sort();
    sets.dedup();
    let keep: Vec<bool> = sets
        .iter()
        .map(|s| !sets.iter().any(|t| s.is_proper_subset(t)))
        .collect();
    sets.into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect()
}
