//! Subsets of the point set of a finite space.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

/// A subset of `{0, .., universe - 1}`.
///
/// Binary operations between sets of different universes panic, the same way
/// slice indexing panics; fallible construction happens in [`PointSet::from_indices`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    bits: FixedBitSet,
}

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet {
            bits: FixedBitSet::with_capacity(universe),
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        PointSet { bits }
    }

    pub fn singleton(universe: usize, x: usize) -> Self {
        let mut s = Self::empty(universe);
        s.insert(x);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe: usize, indices: I) -> Result<Self> {
        let mut s = Self::empty(universe);
        for i in indices {
            if i >= universe {
                return Err(Error::IndexOutOfRange { index: i, len: universe });
            }
            s.bits.insert(i);
        }
        Ok(s)
    }

    /// Builds a set from the low `universe` bits of `mask`.
    pub fn from_mask(universe: usize, mask: u64) -> Self {
        debug_assert!(universe <= 64);
        let mut s = Self::empty(universe);
        for i in 0..universe {
            if mask >> i & 1 == 1 {
                s.bits.insert(i);
            }
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits.contains(x)
    }

    /// Panics if `x` is outside the universe.
    pub fn insert(&mut self, x: usize) {
        self.bits.insert(x);
    }

    pub fn remove(&mut self, x: usize) {
        self.bits.set(x, false);
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn first(&self) -> Option<usize> {
        self.bits.minimum()
    }

    fn same_universe(&self, other: &PointSet) {
        assert_eq!(
            self.universe(),
            other.universe(),
            "point sets over different universes"
        );
    }

    pub fn union_with(&mut self, other: &PointSet) {
        self.same_universe(other);
        self.bits.union_with(&other.bits);
    }

    pub fn intersect_with(&mut self, other: &PointSet) {
        self.same_universe(other);
        self.bits.intersect_with(&other.bits);
    }

    pub fn difference_with(&mut self, other: &PointSet) {
        self.same_universe(other);
        self.bits.difference_with(&other.bits);
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn complement(&self) -> PointSet {
        let mut bits = self.bits.clone();
        bits.toggle_range(..);
        PointSet { bits }
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.same_universe(other);
        self.bits.is_subset(&other.bits)
    }

    pub fn is_disjoint(&self, other: &PointSet) -> bool {
        self.same_universe(other);
        self.bits.is_disjoint(&other.bits)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        !self.is_disjoint(other)
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn out_of_range_index_is_rejected() {
        assert_eq!(
            PointSet::from_indices(3, [0, 3]),
            Err(Error::IndexOutOfRange { index: 3, len: 3 })
        );
    }

    #[test]
    fn complement_stays_inside_universe() {
        let s = PointSet::from_indices(5, [1, 3]).unwrap();
        assert_eq!(s.complement().to_vec(), vec![0, 2, 4]);
        assert_eq!(PointSet::empty(0).complement().len(), 0);
    }

    #[test]
    fn mask_round_trip() {
        let s = PointSet::from_mask(6, 0b101001);
        assert_eq!(s.to_vec(), vec![0, 3, 5]);
    }

    #[test]
    #[should_panic]
    fn mixing_universes_panics() {
        let _ = PointSet::empty(2).union(&PointSet::empty(3));
    }
}
