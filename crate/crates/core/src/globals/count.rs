use super::distinct::intersect_domains;
use super::Condition;
use crate::constraint::{CmpOp, Constraint, Tags};
use crate::domain::{Domains, VarId};

/// The number of variables taking a value in `values` satisfies `op k`.
#[derive(Debug, Clone)]
pub struct CountCtr {
    scope: Vec<VarId>,
    values: Vec<i64>,
    op: CmpOp,
    k: i64,
}

impl CountCtr {
    pub fn new(scope: Vec<VarId>, mut values: Vec<i64>, op: CmpOp, k: i64) -> Self {
        values.sort_unstable();
        values.dedup();
        Self { scope, values, op, k }
    }

    fn is_target(&self, v: i64) -> bool {
        self.values.binary_search(&v).is_ok()
    }

    /// Makes every undecided variable take a target value (`into = true`) or avoid them.
    fn settle(&self, doms: &mut Domains, into: bool) -> bool {
        for &x in &self.scope {
            let dom = doms.get(x);
            let forced = dom.values().all(|v| self.is_target(v));
            let possible = dom.values().any(|v| self.is_target(v));
            if possible && !forced && !doms.retain(x, |_, v| self.is_target(v) == into) {
                return false;
            }
        }
        true
    }
}

impl Constraint for CountCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "count"
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        let n = values.iter().filter(|&&v| self.is_target(v)).count() as i64;
        self.op.holds(n, self.k)
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        let (mut lb, mut ub) = (0i64, 0i64);
        for &x in &self.scope {
            let dom = doms.get(x);
            if dom.values().all(|v| self.is_target(v)) {
                lb += 1;
            }
            if dom.values().any(|v| self.is_target(v)) {
                ub += 1;
            }
        }
        if !Condition::feasible_in(self.op, lb, ub, self.k) {
            return false;
        }
        let k = self.k;
        match self.op {
            CmpOp::Eq if ub == k => self.settle(doms, true),
            CmpOp::Eq | CmpOp::Le if lb == k => self.settle(doms, false),
            CmpOp::Lt if lb == k - 1 => self.settle(doms, false),
            CmpOp::Ge if ub == k => self.settle(doms, true),
            CmpOp::Gt if ub == k + 1 => self.settle(doms, true),
            CmpOp::Ne if ub == lb + 1 && lb == k => self.settle(doms, true),
            CmpOp::Ne if ub == lb + 1 && ub == k => self.settle(doms, false),
            _ => true,
        }
    }
}

/// Bounds on the number of distinct values taken by `scope`: a lower bound
/// from a greedy packing of pairwise disjoint domains and the upper bound
/// `min(n, |union of domains|)`.
pub fn nvalues_bounds(scope: &[VarId], doms: &Domains) -> (i64, i64) {
    let mut order: Vec<VarId> = scope.to_vec();
    order.sort_by_key(|&x| (doms.get(x).size(), x));
    order.dedup();
    let mut taken: Vec<i64> = Vec::new();
    let mut lb = 0;
    for &x in &order {
        if doms.get(x).values().all(|v| taken.binary_search(&v).is_err()) {
            lb += 1;
            for v in doms.get(x).values() {
                if let Err(i) = taken.binary_search(&v) {
                    taken.insert(i, v);
                }
            }
        }
    }
    let mut union: Vec<i64> = scope.iter().flat_map(|&x| doms.get(x).values()).collect();
    union.sort_unstable();
    union.dedup();
    let n_distinct_vars = order.len();
    (lb as i64, n_distinct_vars.min(union.len()) as i64)
}

/// The number of distinct values taken satisfies `op k`.
#[derive(Debug, Clone)]
pub struct NValuesCtr {
    scope: Vec<VarId>,
    op: CmpOp,
    k: i64,
}

impl NValuesCtr {
    pub fn new(scope: Vec<VarId>, op: CmpOp, k: i64) -> Self {
        Self { scope, op, k }
    }
}

impl Constraint for NValuesCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "nValues"
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::SYMMETRIC
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        let mut v = values.to_vec();
        v.sort_unstable();
        v.dedup();
        self.op.holds(v.len() as i64, self.k)
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        let (lb, ub) = nvalues_bounds(&self.scope, doms);
        if !Condition::feasible_in(self.op, lb, ub, self.k) {
            return false;
        }
        let at_most_one = match self.op {
            CmpOp::Eq | CmpOp::Le => self.k == 1,
            CmpOp::Lt => self.k == 2,
            _ => false,
        };
        if at_most_one && !self.scope.is_empty() {
            return intersect_domains(&self.scope, doms);
        }
        true
    }
}
