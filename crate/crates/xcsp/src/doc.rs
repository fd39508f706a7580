//! In-memory form of a parsed instance. Variable references are resolved to
//! indexes in declaration order, which are also the `VarId`s of the built
//! problem.

use cpsolve::constraint::CmpOp;
use cpsolve::expr::Expr;
use cpsolve::globals::{Condition, Operand};
use cpsolve::optimization::ObjectiveKind;
use cpsolve::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceType {
    Csp,
    Cop,
}

impl InstanceType {
    pub fn name(self) -> &'static str {
        match self {
            Self::Csp => "CSP",
            Self::Cop => "COP",
        }
    }
}

/// A `<var>` (no dimension) or an `<array>`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub dims: Vec<usize>,
    pub values: Vec<i64>,
    /// Index of the first cell in [`InstanceDoc::vars`].
    pub first: VarId,
}

impl VarDecl {
    pub fn n_cells(&self) -> usize {
        self.dims.iter().product()
    }
}

/// A scalar variable or an array cell such as `x[1][2]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarInfo {
    pub name: String,
    pub values: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CtrDoc {
    Extension { list: Vec<VarId>, tuples: Vec<Vec<Option<i64>>>, positive: bool },
    Intension(Expr),
    /// Terms are plain variables or integer expressions.
    AllDifferent(Vec<Expr>),
    AllEqual(Vec<VarId>),
    Ordered { list: Vec<VarId>, op: CmpOp },
    Lex { rows: Vec<Vec<VarId>>, op: CmpOp },
    Precedence { list: Vec<VarId>, values: Vec<i64> },
    Sum { list: Vec<VarId>, coeffs: Vec<i64>, cond: Condition },
    Count { list: Vec<VarId>, values: Vec<i64>, cond: Condition },
    NValues { list: Vec<VarId>, cond: Condition },
    Minimum { list: Vec<VarId>, cond: Condition },
    Maximum { list: Vec<VarId>, cond: Condition },
    Element { list: Vec<VarId>, start: i64, index: VarId, value: Operand },
    Channel { list: Vec<VarId>, list2: Option<Vec<VarId>> },
}

impl CtrDoc {
    pub fn tag(&self) -> &'static str {
        match self {
            CtrDoc::Extension { .. } => "extension",
            CtrDoc::Intension(_) => "intension",
            CtrDoc::AllDifferent(_) => "allDifferent",
            CtrDoc::AllEqual(_) => "allEqual",
            CtrDoc::Ordered { .. } => "ordered",
            CtrDoc::Lex { .. } => "lex",
            CtrDoc::Precedence { .. } => "precedence",
            CtrDoc::Sum { .. } => "sum",
            CtrDoc::Count { .. } => "count",
            CtrDoc::NValues { .. } => "nValues",
            CtrDoc::Minimum { .. } => "minimum",
            CtrDoc::Maximum { .. } => "maximum",
            CtrDoc::Element { .. } => "element",
            CtrDoc::Channel { .. } => "channel",
        }
    }

    /// Direct reading of the constraint on a full assignment (indexed by
    /// variable). Independent of the propagators.
    pub fn holds(&self, v: &[i64]) -> bool {
        let vals = |list: &[VarId]| list.iter().map(|&x| v[x]).collect::<Vec<i64>>();
        let rhs = |c: &Condition| match c.operand {
            Operand::Const(k) => k,
            Operand::Var(z) => v[z],
        };
        match self {
            CtrDoc::Extension { list, tuples, positive } => {
                let t = vals(list);
                let found = tuples.iter().any(|r| r.iter().zip(&t).all(|(a, b)| a.is_none_or(|a| a == *b)));
                found == *positive
            }
            CtrDoc::Intension(e) => e.eval(v) != 0,
            CtrDoc::AllDifferent(terms) => {
                let t: Vec<i64> = terms.iter().map(|e| e.eval(v)).collect();
                (0..t.len()).all(|i| (i + 1..t.len()).all(|j| t[i] != t[j]))
            }
            CtrDoc::AllEqual(list) => vals(list).windows(2).all(|w| w[0] == w[1]),
            CtrDoc::Ordered { list, op } => vals(list).windows(2).all(|w| op.holds(w[0], w[1])),
            CtrDoc::Lex { rows, op } => rows.windows(2).all(|w| {
                let ord = vals(&w[0]).cmp(&vals(&w[1]));
                match op {
                    CmpOp::Lt => ord.is_lt(),
                    CmpOp::Le => ord.is_le(),
                    CmpOp::Gt => ord.is_gt(),
                    CmpOp::Ge => ord.is_ge(),
                    CmpOp::Eq => ord.is_eq(),
                    CmpOp::Ne => ord.is_ne(),
                }
            }),
            CtrDoc::Precedence { list, values } => {
                let t = vals(list);
                values.windows(2).all(|w| match t.iter().position(|&a| a == w[1]) {
                    Some(p) => t[..p].contains(&w[0]),
                    None => true,
                })
            }
            CtrDoc::Sum { list, coeffs, cond } => {
                let s: i128 = list.iter().zip(coeffs).map(|(&x, &c)| v[x] as i128 * c as i128).sum();
                match cond.op {
                    CmpOp::Lt => s < rhs(cond) as i128,
                    CmpOp::Le => s <= rhs(cond) as i128,
                    CmpOp::Ge => s >= rhs(cond) as i128,
                    CmpOp::Gt => s > rhs(cond) as i128,
                    CmpOp::Eq => s == rhs(cond) as i128,
                    CmpOp::Ne => s != rhs(cond) as i128,
                }
            }
            CtrDoc::Count { list, values, cond } => {
                let n = list.iter().filter(|&&x| values.contains(&v[x])).count() as i64;
                cond.op.holds(n, rhs(cond))
            }
            CtrDoc::NValues { list, cond } => {
                let mut t = vals(list);
                t.sort_unstable();
                t.dedup();
                cond.op.holds(t.len() as i64, rhs(cond))
            }
            CtrDoc::Minimum { list, cond } => cond.op.holds(*vals(list).iter().min().unwrap(), rhs(cond)),
            CtrDoc::Maximum { list, cond } => cond.op.holds(*vals(list).iter().max().unwrap(), rhs(cond)),
            CtrDoc::Element { list, start, index, value } => {
                let target = match value {
                    Operand::Const(k) => *k,
                    Operand::Var(z) => v[*z],
                };
                let i = v[*index] - start;
                i >= 0 && (i as usize) < list.len() && v[list[i as usize]] == target
            }
            CtrDoc::Channel { list, list2 } => {
                let xs = vals(list);
                let ys = list2.as_deref().map_or_else(|| xs.clone(), vals);
                let maps = |a: &[i64], b: &[i64]| {
                    a.iter().enumerate().all(|(i, &j)| j >= 0 && (j as usize) < b.len() && b[j as usize] == i as i64)
                };
                maps(&xs, &ys) && (list2.is_none() || maps(&ys, &xs))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectiveDoc {
    pub minimize: bool,
    pub kind: ObjectiveKind,
}

impl ObjectiveDoc {
    pub fn value(&self, v: &[i64]) -> i64 {
        match &self.kind {
            ObjectiveKind::Var(x) => v[*x],
            ObjectiveKind::Sum { scope, coeffs } => scope.iter().zip(coeffs).map(|(&x, &c)| v[x] * c).sum(),
            ObjectiveKind::Minimum(l) => l.iter().map(|&x| v[x]).min().unwrap(),
            ObjectiveKind::Maximum(l) => l.iter().map(|&x| v[x]).max().unwrap(),
            ObjectiveKind::NValues(l) => {
                let mut t: Vec<i64> = l.iter().map(|&x| v[x]).collect();
                t.sort_unstable();
                t.dedup();
                t.len() as i64
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceDoc {
    pub ty: InstanceType,
    pub decls: Vec<VarDecl>,
    pub vars: Vec<VarInfo>,
    pub ctrs: Vec<CtrDoc>,
    pub objective: Option<ObjectiveDoc>,
}

impl InstanceDoc {
    pub fn var_id(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name)
    }

    /// Index of the first constraint violated by a full assignment.
    pub fn first_violated(&self, v: &[i64]) -> Option<usize> {
        assert_eq!(v.len(), self.vars.len());
        self.ctrs.iter().position(|c| !c.holds(v))
    }

    /// Every value belongs to its domain and every constraint holds.
    pub fn accepts(&self, v: &[i64]) -> bool {
        v.len() == self.vars.len()
            && self.vars.iter().zip(v).all(|(x, a)| x.values.binary_search(a).is_ok())
            && self.first_violated(v).is_none()
    }

    /// All accepted assignments, by enumeration of the declared domains.
    pub fn enumerate(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let n = self.vars.len();
        if self.vars.iter().any(|x| x.values.is_empty()) {
            return out;
        }
        let mut idx = vec![0usize; n];
        loop {
            let t: Vec<i64> = (0..n).map(|i| self.vars[i].values[idx[i]]).collect();
            if self.first_violated(&t).is_none() {
                out.push(t);
            }
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < self.vars[i].values.len() {
                    break;
                }
                idx[i] = 0;
            }
        }
    }
}
