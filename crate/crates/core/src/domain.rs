//! Integer domains over a sorted value universe, addressed by value index.
//!
//! A domain never changes its universe; filtering removes indexes at the
//! current search level and backtracking restores them.

use std::fmt;

use crate::sets::{LinkedIter, SetLinkedFinite, NONE};

/// Dense variable identifier, `0..n` over a problem.
pub type VarId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainKind {
    /// `{0, 1}`
    Binary,
    /// Every integer of `min..=max`.
    Range { min: i64 },
    /// An arbitrary sorted list of values.
    Values,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("empty domain")]
    Empty,
    #[error("duplicate value {0} in domain")]
    Duplicate(i64),
    #[error("invalid range {0}..{1}")]
    InvalidRange(i64, i64),
}

#[derive(Debug, Clone)]
pub struct Domain {
    values: Vec<i64>,
    kind: DomainKind,
    present: SetLinkedFinite,
}

impl Domain {
    pub fn range(min: i64, max: i64) -> Result<Self, DomainError> {
        if min > max {
            return Err(DomainError::InvalidRange(min, max));
        }
        let kind = if (min, max) == (0, 1) { DomainKind::Binary } else { DomainKind::Range { min } };
        Ok(Self::build((min..=max).collect(), kind))
    }

    /// Builds a domain from explicit values, which are sorted; duplicates are rejected.
    pub fn from_values(values: &[i64]) -> Result<Self, DomainError> {
        if values.is_empty() {
            return Err(DomainError::Empty);
        }
        let mut sorted = values.to_vec();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(DomainError::Duplicate(w[0]));
        }
        let contiguous = sorted.last().unwrap() - sorted[0] + 1 == sorted.len() as i64;
        let kind = if sorted == [0, 1] {
            DomainKind::Binary
        } else if contiguous {
            DomainKind::Range { min: sorted[0] }
        } else {
            DomainKind::Values
        };
        Ok(Self::build(sorted, kind))
    }

    fn build(values: Vec<i64>, kind: DomainKind) -> Self {
        let present = SetLinkedFinite::new(values.len());
        Self { values, kind, present }
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    /// The initial value universe, sorted.
    pub fn universe(&self) -> &[i64] {
        &self.values
    }

    pub fn initial_size(&self) -> usize {
        self.values.len()
    }

    /// Index of `v` in the universe, regardless of current removals.
    pub fn to_idx(&self, v: i64) -> Option<usize> {
        match self.kind {
            DomainKind::Binary => matches!(v, 0 | 1).then_some(v as usize),
            DomainKind::Range { min } => {
                let a = v.checked_sub(min)?;
                (a >= 0 && (a as usize) < self.values.len()).then_some(a as usize)
            }
            DomainKind::Values => self.values.binary_search(&v).ok(),
        }
    }

    pub fn to_val(&self, a: usize) -> i64 {
        self.values[a]
    }

    pub fn size(&self) -> usize {
        self.present.size()
    }

    pub fn is_empty(&self) -> bool {
        self.present.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.present.contains(a)
    }

    pub fn contains_value(&self, v: i64) -> bool {
        self.to_idx(v).is_some_and(|a| self.contains(a))
    }

    /// Smallest present index, or [`NONE`].
    pub fn first(&self) -> usize {
        self.present.first()
    }

    pub fn last(&self) -> usize {
        self.present.last()
    }

    pub fn next(&self, a: usize) -> usize {
        self.present.next(a)
    }

    pub fn prev(&self, a: usize) -> usize {
        self.present.prev(a)
    }

    pub fn single(&self) -> Option<usize> {
        (self.size() == 1).then(|| self.first())
    }

    pub fn single_value(&self) -> Option<i64> {
        self.single().map(|a| self.to_val(a))
    }

    pub fn min_value(&self) -> i64 {
        self.to_val(self.first())
    }

    pub fn max_value(&self) -> i64 {
        self.to_val(self.last())
    }

    /// Present indexes in increasing value order.
    pub fn iter(&self) -> LinkedIter<'_> {
        self.present.iter()
    }

    pub fn values(&self) -> impl Iterator<Item = i64> + '_ {
        self.iter().map(|a| self.values[a])
    }

    /// Removed indexes, most recent first.
    pub fn removed(&self) -> impl Iterator<Item = usize> + '_ {
        self.present.iter_removed()
    }

    pub fn removed_level(&self, a: usize) -> Option<usize> {
        self.present.removed_level(a)
    }

    /// Any present index; the smallest one.
    pub fn any(&self) -> usize {
        self.first()
    }

    pub(crate) fn set(&self) -> &SetLinkedFinite {
        &self.present
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values().map(|v| v.to_string()).collect();
        write!(f, "{{{}}}", vals.join(","))
    }
}

/// The domains of a problem together with the current search level.
///
/// All filtering goes through this store so that every removal is recorded
/// at the right level and reported to the propagation engine.
#[derive(Debug, Clone)]
pub struct Domains {
    doms: Vec<Domain>,
    level: usize,
    // variables reduced since the last drain, with their size at first reduction
    changes: Vec<(VarId, usize)>,
    changed: Vec<bool>,
    wiped: Option<VarId>,
    removals: u64,
}

impl Domains {
    pub fn new(doms: Vec<Domain>) -> Self {
        let n = doms.len();
        Self { doms, level: 0, changes: Vec::new(), changed: vec![false; n], wiped: None, removals: 0 }
    }

    pub(crate) fn push(&mut self, dom: Domain) -> VarId {
        self.doms.push(dom);
        self.changed.push(false);
        self.doms.len() - 1
    }

    pub fn len(&self) -> usize {
        self.doms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doms.is_empty()
    }

    pub fn get(&self, x: VarId) -> &Domain {
        &self.doms[x]
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn set_level(&mut self, level: usize) {
        self.level = level;
    }

    pub fn removals(&self) -> u64 {
        self.removals
    }

    /// Variable whose domain was last wiped out.
    pub fn wiped(&self) -> Option<VarId> {
        self.wiped
    }

    pub(crate) fn clear_wiped(&mut self) {
        self.wiped = None;
    }

    fn note_change(&mut self, x: VarId) {
        if !self.changed[x] {
            self.changed[x] = true;
            self.changes.push((x, self.doms[x].size()));
        }
    }

    /// Removes index `a` (which must be present). Returns `false` on wipeout.
    pub fn remove(&mut self, x: VarId, a: usize) -> bool {
        debug_assert!(self.doms[x].contains(a));
        self.note_change(x);
        self.doms[x].present.remove_at_level(a, self.level);
        self.removals += 1;
        if self.doms[x].is_empty() {
            self.wiped = Some(x);
            return false;
        }
        true
    }

    /// Removes `a` if present.
    pub fn remove_if_present(&mut self, x: VarId, a: usize) -> bool {
        !self.doms[x].contains(a) || self.remove(x, a)
    }

    pub fn remove_value(&mut self, x: VarId, v: i64) -> bool {
        match self.doms[x].to_idx(v) {
            Some(a) => self.remove_if_present(x, a),
            None => true,
        }
    }

    /// Reduces the domain to `{a}`; wipeout if `a` is absent.
    pub fn reduce_to(&mut self, x: VarId, a: usize) -> bool {
        if !self.doms[x].contains(a) {
            self.wiped = Some(x);
            return false;
        }
        if self.doms[x].size() == 1 {
            return true;
        }
        self.note_change(x);
        let level = self.level;
        let dom = &mut self.doms[x];
        let mut b = dom.first();
        while b != NONE {
            let nb = dom.next(b);
            if b != a {
                dom.present.remove_at_level(b, level);
                self.removals += 1;
            }
            b = nb;
        }
        true
    }

    pub fn reduce_to_value(&mut self, x: VarId, v: i64) -> bool {
        match self.doms[x].to_idx(v) {
            Some(a) => self.reduce_to(x, a),
            None => {
                self.wiped = Some(x);
                false
            }
        }
    }

    /// Keeps only the indexes satisfying `keep`. Returns `false` on wipeout.
    pub fn retain(&mut self, x: VarId, mut keep: impl FnMut(usize, i64) -> bool) -> bool {
        let mut a = self.doms[x].first();
        while a != NONE {
            let next = self.doms[x].next(a);
            if !keep(a, self.doms[x].to_val(a)) && !self.remove(x, a) {
                return false;
            }
            a = next;
        }
        true
    }

    /// Removes every value `< v`.
    pub fn remove_below(&mut self, x: VarId, v: i64) -> bool {
        while !self.doms[x].is_empty() && self.doms[x].min_value() < v {
            let a = self.doms[x].first();
            if !self.remove(x, a) {
                return false;
            }
        }
        true
    }

    /// Removes every value `> v`.
    pub fn remove_above(&mut self, x: VarId, v: i64) -> bool {
        while !self.doms[x].is_empty() && self.doms[x].max_value() > v {
            let a = self.doms[x].last();
            if !self.remove(x, a) {
                return false;
            }
        }
        true
    }

    /// Restores every removal done at `level` or deeper.
    pub fn restore_before(&mut self, level: usize) {
        for dom in &mut self.doms {
            dom.present.restore_before(level);
        }
        self.discard_changes();
        self.wiped = None;
    }

    /// Variables reduced since the last call, each with its size before the first reduction.
    pub fn take_changes(&mut self) -> Vec<(VarId, usize)> {
        for &(x, _) in &self.changes {
            self.changed[x] = false;
        }
        std::mem::take(&mut self.changes)
    }

    pub(crate) fn discard_changes(&mut self) {
        for &(x, _) in &self.changes {
            self.changed[x] = false;
        }
        self.changes.clear();
    }

    pub fn has_changes(&self) -> bool {
        !self.changes.is_empty()
    }

    /// Values of all variables when every domain is a singleton.
    pub fn instantiation(&self) -> Option<Vec<i64>> {
        self.doms.iter().map(Domain::single_value).collect()
    }

    /// Exact copy of the domain sets, for state comparisons.
    pub fn snapshot(&self) -> DomainsSnapshot {
        DomainsSnapshot(self.doms.iter().map(|d| d.present.clone()).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DomainsSnapshot(Vec<SetLinkedFinite>);
