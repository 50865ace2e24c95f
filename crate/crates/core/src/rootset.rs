//! Fixed-width sets of positive-root indices.
//!
//! Every supported root system has at most 120 positive roots (E8), so a
//! single `u128` holds any subset.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Largest number of positive roots a [`RootSet`] can index.
pub const MAX_ROOTS: usize = 128;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootSet(u128);

impl RootSet {
    pub const EMPTY: RootSet = RootSet(0);

    /// The set `{0, 1, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ROOTS);
        if n == MAX_ROOTS {
            RootSet(u128::MAX)
        } else {
            RootSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        RootSet(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = RootSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        RootSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        RootSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        RootSet(self.0 & !other.0)
    }

    /// Complement inside `{0, .., n-1}`.
    pub fn complement(self, n: usize) -> Self {
        RootSet::full(n).difference(self)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> RootSetIter {
        RootSetIter(self.0)
    }
}

impl fmt::Debug for RootSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for RootSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        RootSet::from_indices(iter)
    }
}

pub struct RootSetIter(u128);

impl Iterator for RootSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for RootSetIter {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn full_and_complement() {
        assert_eq!(RootSet::full(0), RootSet::EMPTY);
        assert_eq!(RootSet::full(128).len(), 128);
        let s = RootSet::from_indices([1, 3]);
        assert_eq!(s.complement(4), RootSet::from_indices([0, 2]));
    }

    proptest! {
        #[test]
        fn iter_round_trips(bits in any::<u128>()) {
            let s = RootSet(bits);
            let back: RootSet = s.iter().collect();
            prop_assert_eq!(back, s);
            prop_assert_eq!(s.iter().len(), s.len());
        }
    }
}
