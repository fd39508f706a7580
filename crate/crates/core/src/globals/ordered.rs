use crate::constraint::{CmpOp, Constraint, Tags};
use crate::domain::{Domains, VarId};

/// `x[i] op x[i+1]` for consecutive variables, with `op` among lt, le, ge, gt.
#[derive(Debug, Clone)]
pub struct OrderedCtr {
    scope: Vec<VarId>,
    op: CmpOp,
}

impl OrderedCtr {
    pub fn new(scope: Vec<VarId>, op: CmpOp) -> Self {
        assert!(matches!(op, CmpOp::Lt | CmpOp::Le | CmpOp::Ge | CmpOp::Gt), "ordered needs lt, le, ge or gt");
        Self { scope, op }
    }

    /// Enforces `x + gap <= y` on bounds.
    fn le_gap(doms: &mut Domains, x: VarId, y: VarId, gap: i64) -> Option<bool> {
        let (sx, sy) = (doms.get(x).size(), doms.get(y).size());
        let lo = doms.get(x).min_value().saturating_add(gap);
        if !doms.remove_below(y, lo) {
            return None;
        }
        let hi = doms.get(y).max_value().saturating_sub(gap);
        if !doms.remove_above(x, hi) {
            return None;
        }
        Some(doms.get(x).size() != sx || doms.get(y).size() != sy)
    }
}

impl Constraint for OrderedCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "ordered"
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::NOT_SYMMETRIC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        values.windows(2).all(|w| self.op.holds(w[0], w[1]))
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        let gap = i64::from(matches!(self.op, CmpOp::Lt | CmpOp::Gt));
        let increasing = matches!(self.op, CmpOp::Lt | CmpOp::Le);
        loop {
            let mut changed = false;
            for w in self.scope.windows(2) {
                let (x, y) = if increasing { (w[0], w[1]) } else { (w[1], w[0]) };
                match Self::le_gap(doms, x, y, gap) {
                    None => return false,
                    Some(c) => changed |= c,
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

/// Rows ordered lexicographically: `rows[i] <=lex rows[i+1]` (or `<lex`, or
/// the decreasing variants), all rows having the same length.
#[derive(Debug, Clone)]
pub struct LexCtr {
    scope: Vec<VarId>,
    len: usize,
    op: CmpOp,
}

impl LexCtr {
    pub fn new(rows: &[Vec<VarId>], op: CmpOp) -> Self {
        assert!(matches!(op, CmpOp::Lt | CmpOp::Le | CmpOp::Ge | CmpOp::Gt), "lex needs lt, le, ge or gt");
        let len = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == len), "lex rows must have the same length");
        Self { scope: rows.concat(), len, op }
    }

    fn n_rows(&self) -> usize {
        self.scope.len().checked_div(self.len).unwrap_or(0)
    }

    /// Whether `x[from..] <=lex y[from..]` (strictly if `strict`) admits a solution.
    fn suffix_feasible(doms: &Domains, x: &[VarId], y: &[VarId], from: usize, strict: bool) -> bool {
        for i in from..x.len() {
            let (lo, hi) = (doms.get(x[i]).min_value(), doms.get(y[i]).max_value());
            if lo < hi {
                return true;
            }
            if lo > hi {
                return false;
            }
        }
        !strict
    }

    /// Filters `x <=lex y` (or `<lex`).
    fn filter_pair(doms: &mut Domains, x: &[VarId], y: &[VarId], strict: bool) -> bool {
        loop {
            let mut alpha = 0;
            while alpha < x.len() {
                match (doms.get(x[alpha]).single_value(), doms.get(y[alpha]).single_value()) {
                    (Some(a), Some(b)) if a == b => alpha += 1,
                    _ => break,
                }
            }
            if alpha == x.len() {
                return !strict;
            }
            let (xa, ya) = (x[alpha], y[alpha]);
            let (sx, sy) = (doms.get(xa).size(), doms.get(ya).size());
            // equality at alpha is only possible if the suffix can be ordered
            let gap = i64::from(!Self::suffix_feasible(doms, x, y, alpha + 1, strict));
            let hi = doms.get(ya).max_value().saturating_sub(gap);
            if !doms.remove_above(xa, hi) {
                return false;
            }
            let lo = doms.get(xa).min_value().saturating_add(gap);
            if !doms.remove_below(ya, lo) {
                return false;
            }
            if doms.get(xa).size() == sx && doms.get(ya).size() == sy {
                return true;
            }
        }
    }

    fn lex_holds(a: &[i64], b: &[i64], op: CmpOp) -> bool {
        op.holds(a.cmp(b) as i64, 0)
    }
}

impl Constraint for LexCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "lex"
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::NOT_SYMMETRIC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        (1..self.n_rows()).all(|r| {
            Self::lex_holds(&values[(r - 1) * self.len..r * self.len], &values[r * self.len..(r + 1) * self.len], self.op)
        })
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        let strict = matches!(self.op, CmpOp::Lt | CmpOp::Gt);
        let increasing = matches!(self.op, CmpOp::Lt | CmpOp::Le);
        loop {
            let before = doms.removals();
            for r in 1..self.n_rows() {
                let (a, b) = (&self.scope[(r - 1) * self.len..r * self.len], &self.scope[r * self.len..(r + 1) * self.len]);
                let ok = if increasing { Self::filter_pair(doms, a, b, strict) } else { Self::filter_pair(doms, b, a, strict) };
                if !ok {
                    return false;
                }
            }
            if doms.removals() == before {
                return true;
            }
        }
    }
}
