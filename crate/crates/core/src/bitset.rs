//! Dense bitset over object indices `0..universe`.
//!
//! Every region, cone and class union in the crate is an [`ObjectSet`]. Bits at
//! positions `>= universe` in the last word are kept clear so that equality,
//! hashing and cardinality never need masking.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

const WORD_BITS: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ObjectSet {
    universe: usize,
    words: Vec<u64>,
}

impl ObjectSet {
    pub fn empty(universe: usize) -> Self {
        Self {
            universe,
            words: vec![0; universe.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut set = Self {
            universe,
            words: vec![!0; universe.div_ceil(WORD_BITS)],
        };
        set.clear_tail();
        set
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    /// Size of the universe the set is drawn from (not its cardinality).
    #[inline]
    pub fn universe(&self) -> usize {
        self.universe
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe, "object index {i} outside universe {}", self.universe);
        self.words[i / WORD_BITS] |= 1 << (i % WORD_BITS);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        assert!(i < self.universe, "object index {i} outside universe {}", self.universe);
        self.words[i / WORD_BITS] &= !(1 << (i % WORD_BITS));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.universe && self.words[i / WORD_BITS] & (1 << (i % WORD_BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `|self ∩ other|` without materializing the intersection.
    pub fn intersection_len(&self, other: &Self) -> usize {
        self.check_universe(other);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        !self.intersects(other)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.check_universe(other);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn union_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn difference_with(&mut self, other: &Self) {
        self.check_universe(other);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn complement(&self) -> Self {
        let mut out = Self {
            universe: self.universe,
            words: self.words.iter().map(|w| !w).collect(),
        };
        out.clear_tail();
        out
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    fn clear_tail(&mut self) {
        let rem = self.universe % WORD_BITS;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    fn check_universe(&self, other: &Self) {
        debug_assert_eq!(
            self.universe, other.universe,
            "set operation across different universes"
        );
    }
}

impl fmt::Debug for ObjectSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD_BITS + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a ObjectSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl BitOr for &ObjectSet {
    type Output = ObjectSet;

    fn bitor(self, rhs: &ObjectSet) -> ObjectSet {
        let mut out = self.clone();
        out.union_with(rhs);
        out
    }
}

impl BitAnd for &ObjectSet {
    type Output = ObjectSet;

    fn bitand(self, rhs: &ObjectSet) -> ObjectSet {
        let mut out = self.clone();
        out.intersect_with(rhs);
        out
    }
}

impl Sub for &ObjectSet {
    type Output = ObjectSet;

    fn sub(self, rhs: &ObjectSet) -> ObjectSet {
        let mut out = self.clone();
        out.difference_with(rhs);
        out
    }
}

impl Not for &ObjectSet {
    type Output = ObjectSet;

    fn not(self) -> ObjectSet {
        self.complement()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn full_set_clears_tail_bits() {
        let s = ObjectSet::full(70);
        assert_eq!(s.len(), 70);
        assert_eq!(s.complement(), ObjectSet::empty(70));
        assert!(!s.contains(70));
    }

    #[test]
    fn zero_universe_is_empty() {
        let s = ObjectSet::full(0);
        assert!(s.is_empty());
        assert_eq!(s.iter().count(), 0);
    }

    #[test]
    fn iter_crosses_word_boundaries() {
        let idx = [0, 63, 64, 65, 127, 128, 199];
        let s = ObjectSet::from_indices(200, idx);
        assert_eq!(s.to_vec(), idx.to_vec());
    }

    fn arb_pair() -> impl Strategy<Value = (usize, BTreeSet<usize>, BTreeSet<usize>)> {
        (1usize..150).prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::btree_set(0..n, 0..n),
                proptest::collection::btree_set(0..n, 0..n),
            )
        })
    }

    proptest! {
        #[test]
        fn matches_btreeset_model((n, a, b) in arb_pair()) {
            let sa = ObjectSet::from_indices(n, a.iter().copied());
            let sb = ObjectSet::from_indices(n, b.iter().copied());
            let u: Vec<usize> = (0..n).collect();

            prop_assert_eq!((&sa | &sb).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!((&sa & &sb).to_vec(), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!((&sa - &sb).to_vec(), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(
                (!&sa).to_vec(),
                u.iter().filter(|i| !a.contains(i)).copied().collect::<Vec<_>>()
            );
            prop_assert_eq!(sa.len(), a.len());
            prop_assert_eq!(sa.intersection_len(&sb), a.intersection(&b).count());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
        }

        #[test]
        fn de_morgan((n, a, b) in arb_pair()) {
            let sa = ObjectSet::from_indices(n, a);
            let sb = ObjectSet::from_indices(n, b);
            prop_assert_eq!(!&(&sa | &sb), &!&sa & &!&sb);
            prop_assert_eq!(!&(&sa & &sb), &!&sa | &!&sb);
        }
    }
}
