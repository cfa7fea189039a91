//! Bounded LIFO of tree-node records.

use std::collections::VecDeque;

use crate::rowset::RowSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeNodeRecord {
    /// 0-based cell column at which the search resumes.
    pub column: usize,
    /// Valid rows before this node's exclusion.
    pub snapshot: RowSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lifo {
    capacity: usize,
    items: VecDeque<TreeNodeRecord>,
}

impl Lifo {
    pub fn new(capacity: usize) -> Self {
        assert!(capacity >= 1, "LIFO capacity must be at least 1");
        Lifo { capacity, items: VecDeque::with_capacity(capacity) }
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Push a record; when full the oldest record is evicted and returned.
    pub fn push(&mut self, rec: TreeNodeRecord) -> Option<TreeNodeRecord> {
        let evicted = if self.items.len() == self.capacity { self.items.pop_front() } else { None };
        self.items.push_back(rec);
        evicted
    }

    pub fn pop(&mut self) -> Option<TreeNodeRecord> {
        self.items.pop_back()
    }

    pub fn top(&self) -> Option<&TreeNodeRecord> {
        self.items.back()
    }

    pub fn top_mut(&mut self) -> Option<&mut TreeNodeRecord> {
        self.items.back_mut()
    }

    pub fn clear(&mut self) {
        self.items.clear();
    }
}
