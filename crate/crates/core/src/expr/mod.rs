//! Boolean/arithmetic expression trees in functional syntax, as found in
//! intension constraints: `eq(add(x,y),z)`, `le(dist(x,y),2)`, ...
//!
//! Trees are evaluated over integers, Booleans being 0/1. Integer division
//! and modulo are not part of the operator set, so evaluation is total.

mod intension;
mod parse;
mod primitive;

use std::fmt;

use crate::domain::VarId;

pub use intension::IntensionCtr;
pub use parse::{parse_expression, ExprError};
pub use primitive::{recognize_primitive, Primitive, PrimitiveCtr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Op {
    Neg,
    Abs,
    Add,
    Sub,
    Mul,
    Min,
    Max,
    Dist,
    Lt,
    Le,
    Ge,
    Gt,
    Eq,
    Ne,
    Not,
    And,
    Or,
    Xor,
    Iff,
    Imp,
    If,
    In,
    Set,
}

impl Op {
    pub const ALL: [Op; 23] = [
        Op::Neg,
        Op::Abs,
        Op::Add,
        Op::Sub,
        Op::Mul,
        Op::Min,
        Op::Max,
        Op::Dist,
        Op::Lt,
        Op::Le,
        Op::Ge,
        Op::Gt,
        Op::Eq,
        Op::Ne,
        Op::Not,
        Op::And,
        Op::Or,
        Op::Xor,
        Op::Iff,
        Op::Imp,
        Op::If,
        Op::In,
        Op::Set,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Op::Neg => "neg",
            Op::Abs => "abs",
            Op::Add => "add",
            Op::Sub => "sub",
            Op::Mul => "mul",
            Op::Min => "min",
            Op::Max => "max",
            Op::Dist => "dist",
            Op::Lt => "lt",
            Op::Le => "le",
            Op::Ge => "ge",
            Op::Gt => "gt",
            Op::Eq => "eq",
            Op::Ne => "ne",
            Op::Not => "not",
            Op::And => "and",
            Op::Or => "or",
            Op::Xor => "xor",
            Op::Iff => "iff",
            Op::Imp => "imp",
            Op::If => "if",
            Op::In => "in",
            Op::Set => "set",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Op::ALL.into_iter().find(|op| op.name() == s)
    }

    /// Allowed number of children: `(min, max)`, `None` meaning unbounded.
    pub fn arity(self) -> (usize, Option<usize>) {
        match self {
            Op::Neg | Op::Abs | Op::Not => (1, Some(1)),
            Op::Sub | Op::Dist | Op::Lt | Op::Le | Op::Ge | Op::Gt | Op::Ne | Op::Imp | Op::In => (2, Some(2)),
            Op::If => (3, Some(3)),
            Op::Set => (0, None),
            Op::Add | Op::Mul | Op::Min | Op::Max | Op::Eq | Op::And | Op::Or | Op::Xor | Op::Iff => (2, None),
        }
    }

    /// Whether the operator yields a truth value.
    pub fn is_predicate(self) -> bool {
        matches!(
            self,
            Op::Lt
                | Op::Le
                | Op::Ge
                | Op::Gt
                | Op::Eq
                | Op::Ne
                | Op::Not
                | Op::And
                | Op::Or
                | Op::Xor
                | Op::Iff
                | Op::Imp
                | Op::In
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(VarId),
    Const(i64),
    Node(Op, Vec<Expr>),
}

impl Expr {
    pub fn node(op: Op, children: Vec<Expr>) -> Self {
        Expr::Node(op, children)
    }

    pub fn var(x: VarId) -> Self {
        Expr::Var(x)
    }

    pub fn cst(k: i64) -> Self {
        Expr::Const(k)
    }

    pub fn is_predicate(&self) -> bool {
        matches!(self, Expr::Node(op, _) if op.is_predicate())
    }

    /// Distinct variables in order of first occurrence.
    pub fn vars(&self) -> Vec<VarId> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<VarId>) {
        match self {
            Expr::Var(x) => {
                if !out.contains(x) {
                    out.push(*x)
                }
            }
            Expr::Const(_) => {}
            Expr::Node(_, children) => children.iter().for_each(|c| c.collect_vars(out)),
        }
    }

    /// Replaces every variable leaf `x` by `f(x)`.
    pub fn map_vars(&self, f: &impl Fn(VarId) -> VarId) -> Expr {
        match self {
            Expr::Var(x) => Expr::Var(f(*x)),
            Expr::Const(k) => Expr::Const(*k),
            Expr::Node(op, children) => Expr::Node(*op, children.iter().map(|c| c.map_vars(f)).collect()),
        }
    }

    /// Evaluates the tree, variable leaves being indexes into `values`.
    pub fn eval(&self, values: &[i64]) -> i64 {
        match self {
            Expr::Var(x) => values[*x],
            Expr::Const(k) => *k,
            Expr::Node(op, ch) => {
                let v = |i: usize| ch[i].eval(values);
                let truth = |b: bool| i64::from(b);
                match op {
                    Op::Neg => v(0).wrapping_neg(),
                    Op::Abs => v(0).wrapping_abs(),
                    Op::Add => ch.iter().fold(0i64, |acc, c| acc.wrapping_add(c.eval(values))),
                    Op::Sub => v(0).wrapping_sub(v(1)),
                    Op::Mul => ch.iter().fold(1i64, |acc, c| acc.wrapping_mul(c.eval(values))),
                    Op::Min => ch.iter().map(|c| c.eval(values)).min().unwrap(),
                    Op::Max => ch.iter().map(|c| c.eval(values)).max().unwrap(),
                    Op::Dist => v(0).wrapping_sub(v(1)).wrapping_abs(),
                    Op::Lt => truth(v(0) < v(1)),
                    Op::Le => truth(v(0) <= v(1)),
                    Op::Ge => truth(v(0) >= v(1)),
                    Op::Gt => truth(v(0) > v(1)),
                    Op::Ne => truth(v(0) != v(1)),
                    Op::Eq => {
                        let first = v(0);
                        truth(ch[1..].iter().all(|c| c.eval(values) == first))
                    }
                    Op::Not => truth(v(0) == 0),
                    Op::And => truth(ch.iter().all(|c| c.eval(values) != 0)),
                    Op::Or => truth(ch.iter().any(|c| c.eval(values) != 0)),
                    Op::Xor => truth(ch.iter().filter(|c| c.eval(values) != 0).count() % 2 == 1),
                    Op::Iff => {
                        let first = v(0) != 0;
                        truth(ch[1..].iter().all(|c| (c.eval(values) != 0) == first))
                    }
                    Op::Imp => truth(v(0) == 0 || v(1) != 0),
                    Op::If => {
                        if v(0) != 0 {
                            v(1)
                        } else {
                            v(2)
                        }
                    }
                    Op::In => {
                        let x = v(0);
                        match &ch[1] {
                            Expr::Node(Op::Set, items) => truth(items.iter().any(|c| c.eval(values) == x)),
                            other => truth(other.eval(values) == x),
                        }
                    }
                    // a set on its own has no integer meaning
                    Op::Set => 0,
                }
            }
        }
    }

    /// Renders the tree with `name` giving the text of each variable leaf.
    pub fn display_with<'a>(&'a self, name: &'a dyn Fn(VarId) -> String) -> impl fmt::Display + 'a {
        ExprDisplay { expr: self, name }
    }
}

struct ExprDisplay<'a> {
    expr: &'a Expr,
    name: &'a dyn Fn(VarId) -> String,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expr {
            Expr::Var(x) => f.write_str(&(self.name)(*x)),
            Expr::Const(k) => write!(f, "{k}"),
            Expr::Node(op, children) => {
                write!(f, "{}(", op.name())?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{}", ExprDisplay { expr: c, name: self.name })?;
                }
                f.write_str(")")
            }
        }
    }
}
