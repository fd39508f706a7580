//! Nogoods recorded at restarts, propagated with two watched literals.
//!
//! A nogood is a disjunction of negative decisions `x != a`. A literal is
//! falsified when `x` is fixed to `a` and satisfied once `a` is gone.

use super::decision::Decision;
use crate::domain::{Domains, VarId};

pub const MAX_NOGOODS: usize = 100_000;

/// Literal `x != a` (index `a`).
pub type Literal = (VarId, usize);

#[derive(Debug, Clone, Default)]
pub struct NogoodStore {
    nogoods: Vec<Vec<Literal>>,
    watches: Vec<Vec<usize>>,
    /// Unary nogoods, to be enforced at the root.
    pending_unary: Vec<Literal>,
    full: bool,
}

fn falsified(doms: &Domains, (x, a): Literal) -> bool {
    doms.get(x).single() == Some(a)
}

impl NogoodStore {
    pub fn new(n_vars: usize) -> Self {
        Self { watches: vec![Vec::new(); n_vars], ..Self::default() }
    }

    pub fn len(&self) -> usize {
        self.nogoods.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nogoods.is_empty()
    }

    /// Whether the cap was hit and some nogood could not be stored.
    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn nogoods(&self) -> &[Vec<Literal>] {
        &self.nogoods
    }

    pub fn clear(&mut self) {
        self.nogoods.clear();
        self.watches.iter_mut().for_each(Vec::clear);
        self.pending_unary.clear();
        self.full = false;
    }

    /// Adds the clause `lits[0] ∨ lits[1] ∨ ...`. Unary clauses are queued
    /// for root enforcement. Returns `false` if the store is full.
    pub fn add(&mut self, lits: Vec<Literal>) -> bool {
        match lits.len() {
            0 => panic!("empty nogood"),
            1 => self.pending_unary.push(lits[0]),
            _ => {
                if self.nogoods.len() >= MAX_NOGOODS {
                    self.full = true;
                    return false;
                }
                let id = self.nogoods.len();
                self.watches[lits[0].0].push(id);
                self.watches[lits[1].0].push(id);
                self.nogoods.push(lits);
            }
        }
        true
    }

    /// Reduced nld-nogoods of a branch: one per negative decision, made of
    /// the negations of the positive decisions before it plus the decision
    /// itself.
    pub fn from_branch(branch: &[Decision], d: usize) -> Vec<Vec<Literal>> {
        let mut out = Vec::new();
        let mut positives: Vec<Literal> = Vec::new();
        for &dec in branch {
            if dec.is_positive() {
                positives.push(dec.literal(d));
            } else {
                let mut ng = positives.clone();
                ng.push(dec.literal(d));
                out.push(ng);
            }
        }
        out
    }

    /// Enforces unary nogoods at the current level.
    pub fn apply_unary(&mut self, doms: &mut Domains) -> bool {
        let mut ok = true;
        for &(x, a) in &self.pending_unary {
            if ok && doms.get(x).contains(a) {
                ok = doms.remove(x, a);
            }
        }
        ok
    }

    /// Propagates the nogoods watching `x` after a reduction of its domain.
    pub fn propagate(&mut self, doms: &mut Domains, x: VarId) -> bool {
        let mut i = 0;
        while i < self.watches[x].len() {
            let id = self.watches[x][i];
            let lits = &mut self.nogoods[id];
            let w = if lits[0].0 == x && falsified(doms, lits[0]) {
                0
            } else if lits[1].0 == x && falsified(doms, lits[1]) {
                1
            } else {
                i += 1;
                continue;
            };
            match (2..lits.len()).find(|&j| !falsified(doms, lits[j])) {
                Some(j) => {
                    lits.swap(w, j);
                    let y = lits[w].0;
                    self.watches[x].swap_remove(i);
                    self.watches[y].push(id);
                    // the entry now at i has not been looked at
                }
                None => {
                    let other = lits[1 - w];
                    if falsified(doms, other) {
                        return false;
                    }
                    if doms.get(other.0).contains(other.1) && !doms.remove(other.0, other.1) {
                        return false;
                    }
                    i += 1;
                }
            }
        }
        true
    }

    /// Whether a full instantiation (indexes) satisfies every stored nogood.
    pub fn satisfied_by(&self, idx: &[usize]) -> bool {
        let lit_ok = |&(x, a): &Literal| idx[x] != a;
        self.nogoods.iter().all(|ng| ng.iter().any(lit_ok)) && self.pending_unary.iter().all(lit_ok)
    }
}
