use super::{Table, TableCheck, STAR};
use crate::constraint::{has_duplicates, Constraint, Tags};
use crate::domain::{Domains, VarId};
use crate::sets::SetSparseReversible;

const UNKNOWN: usize = usize::MAX;

/// Simple Tabular Reduction. With `str2`, validity is only checked on the
/// positions whose domain changed since the last call (Sval) and support
/// collection stops for a position as soon as all its values are supported
/// (Ssup).
#[derive(Debug)]
pub struct StrCtr {
    scope: Vec<VarId>,
    table: Table,
    check: TableCheck,
    current: SetSparseReversible,
    last_sizes: Vec<usize>,
    str2: bool,
    dups: bool,
    sval: Vec<usize>,
    ssup: Vec<usize>,
    supported: Vec<Vec<bool>>,
    unsupported: Vec<usize>,
}

impl StrCtr {
    pub fn new(scope: Vec<VarId>, table: Table, doms: &Domains, str2: bool) -> Self {
        assert!(table.is_positive());
        Self {
            check: TableCheck::new(&scope, doms),
            current: SetSparseReversible::full(table.len()),
            last_sizes: vec![UNKNOWN; scope.len()],
            dups: has_duplicates(&scope),
            sval: Vec::with_capacity(scope.len()),
            ssup: Vec::with_capacity(scope.len()),
            supported: scope.iter().map(|&x| vec![false; doms.get(x).initial_size()]).collect(),
            unsupported: vec![0; scope.len()],
            str2,
            table,
            scope,
        }
    }

    /// Positions (in the table) of the tuples still valid.
    pub fn current_tuples(&self) -> &[usize] {
        self.current.as_slice()
    }
}

impl Constraint for StrCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "extension"
    }

    fn tags(&self) -> Tags {
        Tags::AC | Tags::POSITIVE | Tags::STARRED_COMPATIBLE | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        self.check.holds(&self.table, values)
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        let level = doms.level();
        self.sval.clear();
        self.ssup.clear();
        for (p, &x) in self.scope.iter().enumerate() {
            let size = doms.get(x).size();
            if !self.str2 || size != self.last_sizes[p] {
                self.sval.push(p);
            }
            if size > 1 {
                self.ssup.push(p);
                self.unsupported[p] = size;
                for a in doms.get(x).iter() {
                    self.supported[p][a] = false;
                }
            }
        }
        for i in (0..self.current.size()).rev() {
            let t = self.table.tuple(self.current.get(i));
            let valid = self.sval.iter().all(|&p| t[p] == STAR || doms.get(self.scope[p]).contains(t[p]));
            if !valid {
                self.current.remove_position_at(i, level);
                continue;
            }
            let mut j = 0;
            while j < self.ssup.len() {
                let p = self.ssup[j];
                let a = t[p];
                if a == STAR {
                    self.unsupported[p] = 0;
                } else if !self.supported[p][a] {
                    self.supported[p][a] = true;
                    self.unsupported[p] -= 1;
                }
                if self.unsupported[p] == 0 {
                    self.ssup.swap_remove(j);
                } else {
                    j += 1;
                }
            }
        }
        if self.current.is_empty() {
            return false;
        }
        for &p in &self.ssup {
            let supported = &self.supported[p];
            if !doms.retain(self.scope[p], |a, _| supported[a]) {
                return false;
            }
        }
        if !self.dups {
            for (p, &x) in self.scope.iter().enumerate() {
                self.last_sizes[p] = doms.get(x).size();
            }
        } else {
            // a removal through one occurrence must be seen through the other
            self.last_sizes.fill(UNKNOWN);
        }
        true
    }

    fn restore_before(&mut self, level: usize) {
        self.current.restore_before(level);
        self.last_sizes.fill(UNKNOWN);
    }
}
