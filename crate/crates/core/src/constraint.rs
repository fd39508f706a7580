//! The contract every constraint implements, plus shared vocabulary.

use std::fmt;

use bitflags::bitflags;

use crate::domain::{Domains, VarId};
use crate::optimization::Optimizable;

/// Constraint identifier, dense over a problem.
pub type CtrId = usize;

bitflags! {
    /// Metadata attached to constraints (and heuristics).
    #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
    pub struct Tags: u16 {
        /// Completely symmetric in its scope.
        const SYMMETRIC = 1 << 0;
        const NOT_SYMMETRIC = 1 << 1;
        /// Produces full filtering at each call, not only around the touched variable.
        const CALL_COMPLETE_FILTERING = 1 << 2;
        /// Guarantees (generalized) arc consistency.
        const AC = 1 << 3;
        const NOT_AC = 1 << 4;
        /// Table listing conflicts.
        const NEGATIVE = 1 << 5;
        /// Table listing supports.
        const POSITIVE = 1 << 6;
        /// May contain starred entries.
        const STARRED_COMPATIBLE = 1 << 7;
        /// Aims at maximizing a score.
        const MAXIMIZE = 1 << 8;
    }
}

/// Comparison operators used by conditions and primitives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Ge,
    Gt,
    Eq,
    Ne,
}

impl CmpOp {
    pub fn holds(self, a: i64, b: i64) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Ge => a >= b,
            CmpOp::Gt => a > b,
            CmpOp::Eq => a == b,
            CmpOp::Ne => a != b,
        }
    }

    /// `!(a op b)` is `a op.negate() b`.
    pub fn negate(self) -> Self {
        match self {
            CmpOp::Lt => CmpOp::Ge,
            CmpOp::Le => CmpOp::Gt,
            CmpOp::Ge => CmpOp::Lt,
            CmpOp::Gt => CmpOp::Le,
            CmpOp::Eq => CmpOp::Ne,
            CmpOp::Ne => CmpOp::Eq,
        }
    }

    /// `a op b` is `b op.flip() a`.
    pub fn flip(self) -> Self {
        match self {
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Le => CmpOp::Ge,
            CmpOp::Ge => CmpOp::Le,
            CmpOp::Gt => CmpOp::Lt,
            op => op,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CmpOp::Lt => "lt",
            CmpOp::Le => "le",
            CmpOp::Ge => "ge",
            CmpOp::Gt => "gt",
            CmpOp::Eq => "eq",
            CmpOp::Ne => "ne",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "lt" => CmpOp::Lt,
            "le" => CmpOp::Le,
            "ge" => CmpOp::Ge,
            "gt" => CmpOp::Gt,
            "eq" => CmpOp::Eq,
            "ne" => CmpOp::Ne,
            _ => return None,
        })
    }
}

impl fmt::Display for CmpOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A constraint with its own filtering algorithm.
pub trait Constraint: Send + fmt::Debug {
    /// Variables involved, in the order expected by [`Constraint::is_satisfied_by`].
    fn scope(&self) -> &[VarId];

    /// Family name, e.g. `"extension"` or `"sum"`.
    fn family(&self) -> &'static str;

    fn tags(&self) -> Tags;

    /// Checks a full instantiation of the scope (values, not indexes).
    fn is_satisfied_by(&self, values: &[i64]) -> bool;

    /// Runs the propagator attached to the constraint, knowing that `evt`
    /// has been picked from the propagation queue after a recent reduction
    /// of its domain. Returns `false` if an inconsistency is detected.
    fn run_propagator(&mut self, doms: &mut Domains, evt: VarId) -> bool;

    /// Undoes internal state changes made at `level` or deeper.
    fn restore_before(&mut self, _level: usize) {}

    fn as_optimizable(&mut self) -> Option<&mut dyn Optimizable> {
        None
    }

    fn as_optimizable_ref(&self) -> Option<&dyn Optimizable> {
        None
    }
}

/// Current values of `scope` if all of its variables are fixed.
pub fn fixed_values(scope: &[VarId], doms: &Domains) -> Option<Vec<i64>> {
    scope.iter().map(|&x| doms.get(x).single_value()).collect()
}

pub(crate) fn has_duplicates(scope: &[VarId]) -> bool {
    let mut seen = scope.to_vec();
    seen.sort_unstable();
    seen.windows(2).any(|w| w[0] == w[1])
}
