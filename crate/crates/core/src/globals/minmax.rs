use super::{Condition, Operand};
use crate::constraint::{CmpOp, Constraint, Tags};
use crate::domain::{Domains, VarId};

/// `min(list) op operand` or `max(list) op operand`.
///
/// The maximum is handled as the minimum over negated domains, through the
/// small view below.
#[derive(Debug, Clone)]
pub struct MinMaxCtr {
    scope: Vec<VarId>,
    n_list: usize,
    maximum: bool,
    cond: Condition,
}

#[derive(Clone, Copy)]
struct View {
    neg: bool,
}

impl View {
    fn lo(self, doms: &Domains, x: VarId) -> i64 {
        if self.neg {
            -doms.get(x).max_value()
        } else {
            doms.get(x).min_value()
        }
    }

    fn hi(self, doms: &Domains, x: VarId) -> i64 {
        if self.neg {
            -doms.get(x).min_value()
        } else {
            doms.get(x).max_value()
        }
    }

    fn contains(self, doms: &Domains, x: VarId, v: i64) -> bool {
        doms.get(x).contains_value(if self.neg { -v } else { v })
    }

    /// Removes viewed values `< v`.
    fn remove_below(self, doms: &mut Domains, x: VarId, v: i64) -> bool {
        if self.neg {
            doms.remove_above(x, v.saturating_neg())
        } else {
            doms.remove_below(x, v)
        }
    }

    /// Removes viewed values `> v`.
    fn remove_above(self, doms: &mut Domains, x: VarId, v: i64) -> bool {
        if self.neg {
            doms.remove_below(x, v.saturating_neg())
        } else {
            doms.remove_above(x, v)
        }
    }

    fn remove_value(self, doms: &mut Domains, x: VarId, v: i64) -> bool {
        doms.remove_value(x, if self.neg { -v } else { v })
    }
}

impl MinMaxCtr {
    pub fn new(list: Vec<VarId>, maximum: bool, cond: Condition) -> Self {
        assert!(!list.is_empty(), "minimum/maximum over an empty list");
        let n_list = list.len();
        let mut scope = list;
        if let Operand::Var(z) = cond.operand {
            scope.push(z);
        }
        Self { scope, n_list, maximum, cond }
    }

    pub fn is_maximum(&self) -> bool {
        self.maximum
    }

    pub fn list(&self) -> &[VarId] {
        &self.scope[..self.n_list]
    }

    pub fn condition(&self) -> Condition {
        self.cond
    }

    pub(crate) fn set_condition(&mut self, cond: Condition) {
        debug_assert!(matches!(cond.operand, Operand::Const(_)) == matches!(self.cond.operand, Operand::Const(_)));
        self.cond = cond;
    }

    /// Bounds of `min(list)` (or `max(list)`) over the current domains.
    pub fn bounds(&self, doms: &Domains) -> (i64, i64) {
        let list = self.list();
        if self.maximum {
            (
                list.iter().map(|&x| doms.get(x).min_value()).max().unwrap(),
                list.iter().map(|&x| doms.get(x).max_value()).max().unwrap(),
            )
        } else {
            (
                list.iter().map(|&x| doms.get(x).min_value()).min().unwrap(),
                list.iter().map(|&x| doms.get(x).max_value()).min().unwrap(),
            )
        }
    }

    /// Filtering of `min(list) op rhs` in the view, where `rhs` is the viewed
    /// operand (`z` when present).
    fn filter_min(&self, doms: &mut Domains, view: View, op: CmpOp) -> bool {
        let list = &self.scope[..self.n_list];
        let z = match self.cond.operand {
            Operand::Var(z) => Some(z),
            Operand::Const(_) => None,
        };
        let k = match self.cond.operand {
            Operand::Const(k) => Some(if view.neg { -k } else { k }),
            Operand::Var(_) => None,
        };
        let rhs_lo = |d: &Domains| k.unwrap_or_else(|| view.lo(d, z.unwrap()));
        let rhs_hi = |d: &Domains| k.unwrap_or_else(|| view.hi(d, z.unwrap()));
        let m_lo = |d: &Domains| list.iter().map(|&x| view.lo(d, x)).min().unwrap();
        let m_hi = |d: &Domains| list.iter().map(|&x| view.hi(d, x)).min().unwrap();
        loop {
            let before = doms.removals();
            let ok = match op {
                // m <= rhs (or < rhs): some member must get down to rhs
                CmpOp::Le | CmpOp::Lt => {
                    let strict = i64::from(op == CmpOp::Lt);
                    let bound = rhs_hi(doms).saturating_sub(strict);
                    let candidates: Vec<VarId> = list.iter().copied().filter(|&x| view.lo(doms, x) <= bound).collect();
                    match candidates.as_slice() {
                        [] => false,
                        [x] => {
                            view.remove_above(doms, *x, bound)
                                && z.is_none_or(|z| view.remove_below(doms, z, m_lo(doms).saturating_add(strict)))
                        }
                        _ => z.is_none_or(|z| view.remove_below(doms, z, m_lo(doms).saturating_add(strict))),
                    }
                }
                // m >= rhs (or > rhs): every member above rhs
                CmpOp::Ge | CmpOp::Gt => {
                    let strict = i64::from(op == CmpOp::Gt);
                    let bound = rhs_lo(doms).saturating_add(strict);
                    list.iter().all(|&x| view.remove_below(doms, x, bound))
                        && z.is_none_or(|z| view.remove_above(doms, z, m_hi(doms).saturating_sub(strict)))
                }
                CmpOp::Eq => {
                    let ok = list.iter().all(|&x| view.remove_below(doms, x, rhs_lo(doms)));
                    ok && {
                        let bound = rhs_hi(doms);
                        let candidates: Vec<VarId> =
                            list.iter().copied().filter(|&x| view.lo(doms, x) <= bound).collect();
                        match candidates.as_slice() {
                            [] => false,
                            [x] => view.remove_above(doms, *x, bound),
                            _ => true,
                        }
                    } && match (z, k) {
                        (Some(z), _) => {
                            view.remove_below(doms, z, m_lo(doms)) && view.remove_above(doms, z, m_hi(doms)) && {
                                // a value v of z needs a member able to take v
                                let (lo, hi) = (view.lo(doms, z), view.hi(doms, z));
                                let mut ok = true;
                                for v in [lo, hi] {
                                    if ok && !list.iter().any(|&x| view.contains(doms, x, v)) {
                                        ok = view.remove_value(doms, z, v);
                                    }
                                }
                                ok
                            }
                        }
                        (None, Some(k)) => list.iter().any(|&x| view.contains(doms, x, k)),
                        (None, None) => unreachable!(),
                    }
                }
                CmpOp::Ne => {
                    let fixed_m = if list.iter().all(|&x| doms.get(x).size() == 1) { Some(m_lo(doms)) } else { None };
                    match (fixed_m, z, k) {
                        (Some(m), Some(z), _) => view.remove_value(doms, z, m),
                        (Some(m), None, Some(k)) => m != k,
                        _ => true,
                    }
                }
            };
            if !ok {
                return false;
            }
            if doms.removals() == before {
                return true;
            }
        }
    }
}

impl Constraint for MinMaxCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        if self.maximum {
            "maximum"
        } else {
            "minimum"
        }
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        let list = &values[..self.n_list];
        let m = if self.maximum { list.iter().max() } else { list.iter().min() };
        let rhs = match self.cond.operand {
            Operand::Const(k) => k,
            Operand::Var(_) => values[self.n_list],
        };
        self.cond.holds(*m.unwrap(), rhs)
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        // max(L) op r  <=>  min(-L) flip(op) -r
        let (view, op) = if self.maximum { (View { neg: true }, self.cond.op.flip()) } else { (View { neg: false }, self.cond.op) };
        self.filter_min(doms, view, op)
    }
}
