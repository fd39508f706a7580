use super::{Table, TableCheck};
use crate::constraint::{Constraint, Tags};
use crate::domain::{Domains, VarId};

/// Table of conflicts. A literal `(p,a)` loses all support when the valid
/// conflicts containing it cover the whole product of the other domains.
#[derive(Debug)]
pub struct NegativeCtr {
    scope: Vec<VarId>,
    table: Table,
    check: TableCheck,
    counts: Vec<Vec<u64>>,
}

impl NegativeCtr {
    pub fn new(scope: Vec<VarId>, table: Table, doms: &Domains) -> Self {
        assert!(!table.is_positive() && !table.is_starred());
        Self {
            check: TableCheck::new(&scope, doms),
            counts: scope.iter().map(|&x| vec![0; doms.get(x).initial_size()]).collect(),
            table,
            scope,
        }
    }

    fn filter_once(&mut self, doms: &mut Domains) -> Option<bool> {
        for c in &mut self.counts {
            c.fill(0);
        }
        for t in self.table.tuples() {
            if t.iter().zip(&self.scope).all(|(&a, &x)| doms.get(x).contains(a)) {
                for (p, &a) in t.iter().enumerate() {
                    self.counts[p][a] += 1;
                }
            }
        }
        let sizes: Vec<u128> = self.scope.iter().map(|&x| doms.get(x).size() as u128).collect();
        let mut changed = false;
        for p in 0..self.scope.len() {
            let others = sizes
                .iter()
                .enumerate()
                .filter(|&(q, _)| q != p)
                .try_fold(1u128, |acc, (_, &s)| acc.checked_mul(s))
                .unwrap_or(u128::MAX);
            if others > self.table.len() as u128 {
                continue;
            }
            let counts = &self.counts[p];
            let before = doms.get(self.scope[p]).size();
            if !doms.retain(self.scope[p], |a, _| counts[a] as u128 != others) {
                return None;
            }
            changed |= doms.get(self.scope[p]).size() != before;
            if changed {
                // counts are stale once a domain shrinks
                return Some(true);
            }
        }
        Some(changed)
    }
}

impl Constraint for NegativeCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "extension"
    }

    fn tags(&self) -> Tags {
        Tags::AC | Tags::NEGATIVE | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        self.check.holds(&self.table, values)
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        loop {
            match self.filter_once(doms) {
                None => return false,
                Some(false) => return true,
                Some(true) => {}
            }
        }
    }
}
