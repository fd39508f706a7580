//! Global constraints over integer variables.

mod count;
mod distinct;
mod element;
mod minmax;
mod ordered;
mod precedence;
mod sum;

pub use count::{nvalues_bounds, CountCtr, NValuesCtr};
pub use distinct::{AllDifferentCtr, AllEqualCtr};
pub use element::{ChannelCtr, ElementCtr};
pub use minmax::MinMaxCtr;
pub use ordered::{LexCtr, OrderedCtr};
pub use precedence::PrecedenceCtr;
pub use sum::{sum_bounds, SumCtr};

use std::fmt;

use crate::constraint::CmpOp;
use crate::domain::VarId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operand {
    Const(i64),
    Var(VarId),
}

/// Right-hand side of a global constraint, as in `(le,10)` or `(eq,z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Condition {
    pub op: CmpOp,
    pub operand: Operand,
}

impl Condition {
    pub fn new(op: CmpOp, operand: Operand) -> Self {
        Self { op, operand }
    }

    pub fn cst(op: CmpOp, k: i64) -> Self {
        Self { op, operand: Operand::Const(k) }
    }

    pub fn var(op: CmpOp, z: VarId) -> Self {
        Self { op, operand: Operand::Var(z) }
    }

    /// `lhs op rhs`, where `rhs` is the value of the operand.
    pub fn holds(&self, lhs: i64, rhs: i64) -> bool {
        self.op.holds(lhs, rhs)
    }

    /// Whether some integer in `[lo, hi]` satisfies the condition against constant `k`.
    pub(crate) fn feasible_in(op: CmpOp, lo: i64, hi: i64, k: i64) -> bool {
        match op {
            CmpOp::Lt => lo < k,
            CmpOp::Le => lo <= k,
            CmpOp::Ge => hi >= k,
            CmpOp::Gt => hi > k,
            CmpOp::Eq => lo <= k && k <= hi,
            CmpOp::Ne => lo != hi || lo != k,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.operand {
            Operand::Const(k) => write!(f, "({},{k})", self.op),
            Operand::Var(z) => write!(f, "({},x{z})", self.op),
        }
    }
}
