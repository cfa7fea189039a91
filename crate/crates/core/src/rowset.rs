//! Row masks over the simulated array.
//!
//! Every per-row status in the simulator (valid, excluded, sorted, the bit
//! plane of one digit column) is a `RowSet`: one bit per stored number.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RowSet(FixedBitSet);

impl RowSet {
    pub fn empty(n_rows: usize) -> Self {
        RowSet(FixedBitSet::with_capacity(n_rows))
    }

    pub fn full(n_rows: usize) -> Self {
        let mut set = FixedBitSet::with_capacity(n_rows);
        set.insert_range(..);
        RowSet(set)
    }

    pub fn from_rows<I: IntoIterator<Item = usize>>(n_rows: usize, rows: I) -> Self {
        let mut set = FixedBitSet::with_capacity(n_rows);
        for r in rows {
            set.insert(r);
        }
        RowSet(set)
    }

    /// Number of addressable rows (not the number of members).
    pub fn capacity(&self) -> usize {
        self.0.len()
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn contains(&self, row: usize) -> bool {
        self.0.contains(row)
    }

    pub fn insert(&mut self, row: usize) {
        self.0.insert(row);
    }

    pub fn remove(&mut self, row: usize) {
        self.0.set(row, false);
    }

    pub fn set(&mut self, row: usize, value: bool) {
        self.0.set(row, value);
    }

    /// Lowest member row.
    pub fn first(&self) -> Option<usize> {
        self.0.ones().next()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }

    pub fn intersect_with(&mut self, other: &RowSet) {
        self.0.intersect_with(&other.0);
    }

    pub fn union_with(&mut self, other: &RowSet) {
        self.0.union_with(&other.0);
    }

    pub fn difference_with(&mut self, other: &RowSet) {
        self.0.difference_with(&other.0);
    }

    pub fn and(&self, other: &RowSet) -> RowSet {
        RowSet(&self.0 & &other.0)
    }

    pub fn minus(&self, other: &RowSet) -> RowSet {
        let mut out = self.clone();
        out.difference_with(other);
        out
    }

    pub fn intersects(&self, other: &RowSet) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn is_subset(&self, other: &RowSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for RowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for RowSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for RowSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<usize>::deserialize(d)?;
        let n = rows.iter().max().map_or(0, |m| m + 1);
        Ok(RowSet::from_rows(n, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = RowSet::from_rows(10, [1, 3, 5, 7]);
        let b = RowSet::from_rows(10, [3, 4, 5]);
        assert_eq!(a.and(&b).to_vec(), vec![3, 5]);
        assert_eq!(a.minus(&b).to_vec(), vec![1, 7]);
        assert_eq!(a.first(), Some(1));
        assert_eq!(RowSet::full(3).count(), 3);
        assert!(RowSet::empty(4).is_empty());
        assert!(RowSet::from_rows(10, [3, 5]).is_subset(&a));
    }
}
