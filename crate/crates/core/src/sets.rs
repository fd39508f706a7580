//! Index sets: dense, sparse and doubly linked, plus their reversible
//! variants. Every structure works over indexes `0..capacity`.
//!
//! Reversible structures record the search level of each modification and
//! can be restored with [`SetLinkedFinite::restore_before`] and friends,
//! which undo everything done at that level or deeper.

/// Marker for "no element" in linked structures.
pub const NONE: usize = usize::MAX;

/// A dense set: the elements are `dense[0..size]`.
#[derive(Debug, Clone)]
pub struct SetDense {
    dense: Vec<usize>,
    size: usize,
}

impl SetDense {
    pub fn with_capacity(capacity: usize) -> Self {
        Self { dense: vec![0; capacity], size: 0 }
    }

    /// Index of the last element in `dense`, or `-1` when empty.
    pub fn limit(&self) -> isize {
        self.size as isize - 1
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn capacity(&self) -> usize {
        self.dense.len()
    }

    /// Appends `e`. The caller guarantees `e` is absent and capacity remains.
    pub fn add(&mut self, e: usize) {
        debug_assert!(self.size < self.dense.len());
        self.dense[self.size] = e;
        self.size += 1;
    }

    /// Linear-time membership.
    pub fn contains(&self, e: usize) -> bool {
        self.as_slice().contains(&e)
    }

    /// Removes the element stored at `pos`, moving the last one in its place.
    pub fn remove_at_position(&mut self, pos: usize) -> usize {
        let e = self.dense[pos];
        self.size -= 1;
        self.dense[pos] = self.dense[self.size];
        self.dense[self.size] = e;
        e
    }

    pub fn clear(&mut self) {
        self.size = 0;
    }

    pub fn get(&self, pos: usize) -> usize {
        self.dense[pos]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dense[..self.size]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.as_slice().iter().copied()
    }
}

/// A sparse set over `0..capacity` with O(1) add, remove and membership.
///
/// `dense[sparse[v]] == v` holds for every present `v`.
#[derive(Debug, Clone)]
pub struct SetSparse {
    dense: Vec<usize>,
    sparse: Vec<usize>,
    size: usize,
}

impl SetSparse {
    /// An empty set.
    pub fn new(capacity: usize) -> Self {
        Self { dense: (0..capacity).collect(), sparse: (0..capacity).collect(), size: 0 }
    }

    /// A set containing every index of `0..capacity`.
    pub fn full(capacity: usize) -> Self {
        Self { size: capacity, ..Self::new(capacity) }
    }

    pub fn capacity(&self) -> usize {
        self.dense.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn limit(&self) -> isize {
        self.size as isize - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        self.sparse[v] < self.size
    }

    pub fn add(&mut self, v: usize) {
        debug_assert!(!self.contains(v));
        self.swap_positions(self.sparse[v], self.size);
        self.size += 1;
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(self.contains(v));
        self.size -= 1;
        self.swap_positions(self.sparse[v], self.size);
    }

    pub fn clear(&mut self) {
        self.size = 0;
    }

    pub fn get(&self, pos: usize) -> usize {
        self.dense[pos]
    }

    pub fn position_of(&self, v: usize) -> usize {
        self.sparse[v]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dense[..self.size]
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.as_slice().iter().copied()
    }

    fn swap_positions(&mut self, i: usize, j: usize) {
        let (a, b) = (self.dense[i], self.dense[j]);
        self.dense.swap(i, j);
        self.sparse[a] = j;
        self.sparse[b] = i;
    }

    fn set_size(&mut self, size: usize) {
        self.size = size;
    }
}

/// A sparse set whose removals can be undone level by level.
///
/// Only removal is supported once built; restoring a level resets the limit,
/// so membership comes back but the order of `dense` is not preserved.
#[derive(Debug, Clone)]
pub struct SetSparseReversible {
    set: SetSparse,
    // (level, size before the first removal at that level)
    saved: Vec<(usize, usize)>,
}

impl SetSparseReversible {
    pub fn full(capacity: usize) -> Self {
        Self { set: SetSparse::full(capacity), saved: Vec::new() }
    }

    pub fn size(&self) -> usize {
        self.set.size()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.set.contains(v)
    }

    pub fn get(&self, pos: usize) -> usize {
        self.set.get(pos)
    }

    pub fn as_slice(&self) -> &[usize] {
        self.set.as_slice()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter()
    }

    pub fn remove_at(&mut self, v: usize, level: usize) {
        self.save(level);
        self.set.remove(v);
    }

    /// Removes the element stored at dense position `pos`.
    pub fn remove_position_at(&mut self, pos: usize, level: usize) {
        let v = self.set.get(pos);
        self.remove_at(v, level);
    }

    fn save(&mut self, level: usize) {
        match self.saved.last() {
            Some(&(l, _)) if l == level => {}
            last => {
                debug_assert!(last.is_none_or(|&(l, _)| l < level), "removal below a saved level");
                self.saved.push((level, self.set.size()));
            }
        }
    }

    /// Undoes every removal performed at `level` or deeper.
    pub fn restore_before(&mut self, level: usize) {
        while let Some(&(l, size)) = self.saved.last() {
            if l < level {
                break;
            }
            self.set.set_size(size);
            self.saved.pop();
        }
    }
}

/// An ordered set of indexes `0..capacity` kept as a doubly linked list.
///
/// Removed indexes remember the level at which they were removed and are
/// chained in reverse removal order, which is also the order used to relink
/// them on restoration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetLinkedFinite {
    prevs: Vec<usize>,
    nexts: Vec<usize>,
    first: usize,
    last: usize,
    size: usize,
    removed_levels: Vec<usize>,
    prev_removed: Vec<usize>,
    last_removed: usize,
}

impl SetLinkedFinite {
    pub fn new(capacity: usize) -> Self {
        let prevs = (0..capacity).map(|i| if i == 0 { NONE } else { i - 1 }).collect();
        let nexts = (0..capacity).map(|i| if i + 1 == capacity { NONE } else { i + 1 }).collect();
        Self {
            prevs,
            nexts,
            first: if capacity == 0 { NONE } else { 0 },
            last: if capacity == 0 { NONE } else { capacity - 1 },
            size: capacity,
            removed_levels: vec![NONE; capacity],
            prev_removed: vec![NONE; capacity],
            last_removed: NONE,
        }
    }

    pub fn capacity(&self) -> usize {
        self.nexts.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.removed_levels[idx] == NONE
    }

    /// First present index, or [`NONE`].
    pub fn first(&self) -> usize {
        self.first
    }

    pub fn last(&self) -> usize {
        self.last
    }

    /// Present index following `idx`; `idx` itself must be present.
    pub fn next(&self, idx: usize) -> usize {
        self.nexts[idx]
    }

    pub fn prev(&self, idx: usize) -> usize {
        self.prevs[idx]
    }

    /// Level at which `idx` was removed, if absent.
    pub fn removed_level(&self, idx: usize) -> Option<usize> {
        let l = self.removed_levels[idx];
        (l != NONE).then_some(l)
    }

    /// Most recently removed index, or [`NONE`].
    pub fn last_removed(&self) -> usize {
        self.last_removed
    }

    pub fn prev_removed(&self, idx: usize) -> usize {
        self.prev_removed[idx]
    }

    pub fn remove_at_level(&mut self, idx: usize, level: usize) {
        debug_assert!(self.contains(idx));
        debug_assert!(self.last_removed == NONE || self.removed_levels[self.last_removed] <= level);
        let (p, n) = (self.prevs[idx], self.nexts[idx]);
        if p == NONE {
            self.first = n;
        } else {
            self.nexts[p] = n;
        }
        if n == NONE {
            self.last = p;
        } else {
            self.prevs[n] = p;
        }
        self.removed_levels[idx] = level;
        self.prev_removed[idx] = self.last_removed;
        self.last_removed = idx;
        self.size -= 1;
    }

    /// Brings back every index removed at `level` or deeper.
    pub fn restore_before(&mut self, level: usize) {
        while self.last_removed != NONE && self.removed_levels[self.last_removed] >= level {
            let idx = self.last_removed;
            let (p, n) = (self.prevs[idx], self.nexts[idx]);
            if p == NONE {
                self.first = idx;
            } else {
                self.nexts[p] = idx;
            }
            if n == NONE {
                self.last = idx;
            } else {
                self.prevs[n] = idx;
            }
            self.removed_levels[idx] = NONE;
            self.last_removed = self.prev_removed[idx];
            self.prev_removed[idx] = NONE;
            self.size += 1;
        }
    }

    /// Present indexes in increasing order.
    pub fn iter(&self) -> LinkedIter<'_> {
        LinkedIter { set: self, cur: self.first, forward: true }
    }

    /// Present indexes in decreasing order.
    pub fn iter_rev(&self) -> LinkedIter<'_> {
        LinkedIter { set: self, cur: self.last, forward: false }
    }

    /// Removed indexes, most recent first.
    pub fn iter_removed(&self) -> impl Iterator<Item = usize> + '_ {
        let mut cur = self.last_removed;
        std::iter::from_fn(move || {
            (cur != NONE).then(|| {
                let idx = cur;
                cur = self.prev_removed[idx];
                idx
            })
        })
    }
}

pub struct LinkedIter<'a> {
    set: &'a SetLinkedFinite,
    cur: usize,
    forward: bool,
}

impl Iterator for LinkedIter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.cur == NONE {
            return None;
        }
        let idx = self.cur;
        self.cur = if self.forward { self.set.nexts[idx] } else { self.set.prevs[idx] };
        Some(idx)
    }
}

/// A bitset over `0..n` whose non-zero words are tracked by a reversible
/// sparse set, as used by Compact-Table.
#[derive(Debug, Clone)]
pub struct ReversibleSparseBitset {
    words: Vec<u64>,
    non_zero: SetSparseReversible,
    // (level, word index, previous value)
    saved: Vec<(usize, usize, u64)>,
    last_saved: Vec<usize>,
}

impl ReversibleSparseBitset {
    /// A bitset with bits `0..n` set.
    pub fn full(n: usize) -> Self {
        let nwords = n.div_ceil(64);
        let mut words = vec![u64::MAX; nwords];
        if !n.is_multiple_of(64) {
            words[nwords - 1] = (1u64 << (n % 64)) - 1;
        }
        Self {
            words,
            non_zero: SetSparseReversible::full(nwords),
            saved: Vec::new(),
            last_saved: vec![NONE; nwords],
        }
    }

    pub fn n_words(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.non_zero.is_empty()
    }

    pub fn word(&self, w: usize) -> u64 {
        self.words[w]
    }

    pub fn contains(&self, bit: usize) -> bool {
        self.words[bit / 64] & (1u64 << (bit % 64)) != 0
    }

    pub fn count_ones(&self) -> usize {
        self.non_zero.iter().map(|w| self.words[w].count_ones() as usize).sum()
    }

    /// Indexes of the words that are currently non-zero.
    pub fn non_zero_words(&self) -> &[usize] {
        self.non_zero.as_slice()
    }

    fn set_word(&mut self, w: usize, value: u64, level: usize) {
        if self.last_saved[w] != level {
            self.saved.push((level, w, self.words[w]));
            self.last_saved[w] = level;
        }
        self.words[w] = value;
        if value == 0 {
            self.non_zero.remove_at(w, level);
        }
    }

    /// `self &= mask`
    pub fn intersect_with(&mut self, mask: &[u64], level: usize) {
        for pos in (0..self.non_zero.size()).rev() {
            let w = self.non_zero.get(pos);
            let value = self.words[w] & mask[w];
            if value != self.words[w] {
                self.set_word(w, value, level);
            }
        }
    }

    /// `self &= !mask`
    pub fn subtract(&mut self, mask: &[u64], level: usize) {
        for pos in (0..self.non_zero.size()).rev() {
            let w = self.non_zero.get(pos);
            let value = self.words[w] & !mask[w];
            if value != self.words[w] {
                self.set_word(w, value, level);
            }
        }
    }

    /// First non-zero word (in tracking order) sharing a bit with `mask`.
    pub fn intersecting_word(&self, mask: &[u64]) -> Option<usize> {
        self.non_zero.iter().find(|&w| self.words[w] & mask[w] != 0)
    }

    pub fn restore_before(&mut self, level: usize) {
        while let Some(&(l, w, old)) = self.saved.last() {
            if l < level {
                break;
            }
            self.words[w] = old;
            self.last_saved[w] = NONE;
            self.saved.pop();
        }
        self.non_zero.restore_before(level);
    }

    /// Set bits in increasing order.
    pub fn ones(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                out.push(w * 64 + bits.trailing_zeros() as usize);
                bits &= bits - 1;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    #[test]
    fn sparse_identity_after_add() {
        let mut s = SetSparse::new(5);
        s.add(3);
        assert!(s.contains(3));
        assert_eq!(s.get(s.position_of(3)), 3);
        s.remove(3);
        assert!(!s.contains(3));
    }

    #[test]
    fn sparse_shuffled_adds() {
        let mut s = SetSparse::new(5);
        for v in [3, 0, 4, 1, 2] {
            s.add(v);
        }
        assert_eq!(s.size(), 5);
        assert!((0..5).all(|v| s.contains(v)));
    }

    #[test]
    fn dense_limit() {
        let mut d = SetDense::with_capacity(4);
        assert_eq!(d.limit(), -1);
        d.add(2);
        d.add(0);
        assert_eq!(d.limit(), 1);
        assert!(d.contains(0) && !d.contains(1));
        d.remove_at_position(0);
        assert_eq!(d.as_slice(), &[0]);
    }

    #[test]
    fn linked_remove_records_level() {
        let mut s = SetLinkedFinite::new(3);
        s.remove_at_level(1, 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.removed_level(1), Some(2));
        s.remove_at_level(0, 2);
        s.remove_at_level(2, 2);
        assert_eq!(s.size(), 0);
        assert_eq!(s.first(), NONE);
        assert_eq!(s.iter_removed().collect::<Vec<_>>(), vec![2, 0, 1]);
    }

    #[test]
    fn linked_restore_partial() {
        let mut s = SetLinkedFinite::new(5);
        s.remove_at_level(1, 1);
        s.remove_at_level(3, 2);
        s.restore_before(2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 3, 4]);
        assert!(!s.contains(1));
        s.restore_before(0);
        assert_eq!(s, SetLinkedFinite::new(5));
    }

    #[test]
    fn reversible_sparse_restores_membership() {
        let mut s = SetSparseReversible::full(6);
        s.remove_at(2, 1);
        s.remove_at(4, 1);
        s.remove_at(0, 3);
        s.restore_before(2);
        let present: BTreeSet<_> = s.iter().collect();
        assert_eq!(present, [0, 1, 3, 5].into_iter().collect());
        s.restore_before(0);
        assert_eq!(s.size(), 6);
    }

    #[test]
    fn bitset_intersect_and_restore() {
        let mut b = ReversibleSparseBitset::full(130);
        assert_eq!(b.count_ones(), 130);
        let mut mask = vec![0u64; 3];
        mask[0] = 0b1010;
        mask[2] = 1;
        b.intersect_with(&mask, 1);
        assert_eq!(b.ones(), vec![1, 3, 128]);
        assert_eq!(b.non_zero_words().len(), 2);
        b.subtract(&mask, 2);
        assert!(b.is_empty());
        b.restore_before(2);
        assert_eq!(b.ones(), vec![1, 3, 128]);
        b.restore_before(1);
        assert_eq!(b.count_ones(), 130);
    }

    #[derive(Debug, Clone)]
    enum Step {
        Remove(usize),
        Descend,
        Restore(usize),
    }

    fn steps() -> impl Strategy<Value = Vec<Step>> {
        prop::collection::vec(
            prop_oneof![
                3 => (0usize..12).prop_map(Step::Remove),
                1 => Just(Step::Descend),
                1 => (0usize..8).prop_map(Step::Restore),
            ],
            0..80,
        )
    }

    proptest! {
        // Oracle: a plain ordered set with an explicit undo stack of (level, element).
        #[test]
        fn linked_set_matches_reference(script in steps()) {
            let mut set = SetLinkedFinite::new(12);
            let mut reference: BTreeSet<usize> = (0..12).collect();
            let mut undo: Vec<(usize, usize)> = Vec::new();
            let mut level = 0;
            for step in script {
                match step {
                    Step::Remove(v) => if reference.remove(&v) {
                        set.remove_at_level(v, level);
                        undo.push((level, v));
                    },
                    Step::Descend => level += 1,
                    Step::Restore(l) => {
                        let l = l.min(level);
                        while matches!(undo.last(), Some(&(ul, _)) if ul >= l) {
                            reference.insert(undo.pop().unwrap().1);
                        }
                        set.restore_before(l);
                        let once = set.clone();
                        set.restore_before(l);
                        prop_assert_eq!(&once, &set);
                        level = l;
                    }
                }
                prop_assert_eq!(set.size(), reference.len());
                prop_assert_eq!(set.iter().collect::<Vec<_>>(), reference.iter().copied().collect::<Vec<_>>());
                let mut rev: Vec<_> = set.iter_rev().collect();
                rev.reverse();
                prop_assert_eq!(rev, reference.iter().copied().collect::<Vec<_>>());
                for v in 0..12 {
                    prop_assert_eq!(set.contains(v), reference.contains(&v));
                    prop_assert_eq!(set.removed_level(v).is_some(), !reference.contains(&v));
                }
            }
        }

        #[test]
        fn reversible_sparse_matches_reference(script in steps()) {
            let mut set = SetSparseReversible::full(12);
            let mut reference: BTreeSet<usize> = (0..12).collect();
            let mut undo: Vec<(usize, usize)> = Vec::new();
            let mut level = 0;
            for step in script {
                match step {
                    Step::Remove(v) => if reference.remove(&v) {
                        set.remove_at(v, level);
                        undo.push((level, v));
                    },
                    Step::Descend => level += 1,
                    Step::Restore(l) => {
                        let l = l.min(level);
                        while matches!(undo.last(), Some(&(ul, _)) if ul >= l) {
                            reference.insert(undo.pop().unwrap().1);
                        }
                        set.restore_before(l);
                        level = l;
                    }
                }
                prop_assert_eq!(set.iter().collect::<BTreeSet<_>>(), reference.clone());
            }
        }

        #[test]
        fn bitset_popcount_restored(masks in prop::collection::vec(prop::collection::vec(any::<u64>(), 3), 1..6)) {
            let mut b = ReversibleSparseBitset::full(150);
            let mut counts = Vec::new();
            for (level, mask) in masks.iter().enumerate() {
                counts.push((b.count_ones(), b.ones()));
                b.intersect_with(mask, level);
                for w in 0..b.n_words() {
                    prop_assert_eq!(b.word(w) != 0, b.non_zero_words().contains(&w));
                }
            }
            for level in (0..masks.len()).rev() {
                b.restore_before(level);
                prop_assert_eq!(b.count_ones(), counts[level].0);
                prop_assert_eq!(&b.ones(), &counts[level].1);
            }
        }
    }
}
