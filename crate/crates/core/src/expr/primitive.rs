//! Recognition and dedicated filtering of common intension forms.
//!
//! Recognized patterns (modulo commutativity of `eq`/`ne`/`add`, and with
//! `add(x,k)` / `sub(x,k)` accepted wherever a variable is):
//! `x op k`, `x + k op y`, `z <=> (x + k op y)` and `z <=> (x op k)`, where
//! `op` is a comparison and `z` a 0/1 variable. Anything else goes to the
//! generic scheme.

use super::{Expr, Op};
use crate::constraint::{CmpOp, Constraint, Tags};
use crate::domain::{Domains, VarId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitive {
    /// `x op k`
    Unary { x: VarId, op: CmpOp, k: i64 },
    /// `x + k op y`
    Binary { x: VarId, k: i64, op: CmpOp, y: VarId },
    /// `z <=> (x + k op y)`
    ReifBinary { z: VarId, x: VarId, k: i64, op: CmpOp, y: VarId },
    /// `z <=> (x op k)`
    ReifUnary { z: VarId, x: VarId, op: CmpOp, k: i64 },
}

#[derive(Debug, Clone, Copy)]
enum Lin {
    Var(VarId, i64),
    Const(i64),
}

fn linear(e: &Expr) -> Option<Lin> {
    match e {
        Expr::Var(x) => Some(Lin::Var(*x, 0)),
        Expr::Const(c) => Some(Lin::Const(*c)),
        Expr::Node(Op::Add, ch) if ch.len() == 2 => match (linear(&ch[0])?, linear(&ch[1])?) {
            (Lin::Var(x, k), Lin::Const(c)) | (Lin::Const(c), Lin::Var(x, k)) => Some(Lin::Var(x, k.checked_add(c)?)),
            (Lin::Const(a), Lin::Const(b)) => Some(Lin::Const(a.checked_add(b)?)),
            _ => None,
        },
        Expr::Node(Op::Sub, ch) => match (linear(&ch[0])?, linear(&ch[1])?) {
            (Lin::Var(x, k), Lin::Const(c)) => Some(Lin::Var(x, k.checked_sub(c)?)),
            (Lin::Const(a), Lin::Const(b)) => Some(Lin::Const(a.checked_sub(b)?)),
            _ => None,
        },
        _ => None,
    }
}

fn cmp_op(op: Op) -> Option<CmpOp> {
    Some(match op {
        Op::Lt => CmpOp::Lt,
        Op::Le => CmpOp::Le,
        Op::Ge => CmpOp::Ge,
        Op::Gt => CmpOp::Gt,
        Op::Eq => CmpOp::Eq,
        Op::Ne => CmpOp::Ne,
        _ => return None,
    })
}

fn comparison(e: &Expr) -> Option<Primitive> {
    let Expr::Node(op, ch) = e else { return None };
    let op = cmp_op(*op)?;
    if ch.len() != 2 {
        return None;
    }
    match (linear(&ch[0])?, linear(&ch[1])?) {
        (Lin::Var(x, k1), Lin::Var(y, k2)) if x != y => Some(Primitive::Binary { x, k: k1.checked_sub(k2)?, op, y }),
        (Lin::Var(x, k1), Lin::Const(c)) => Some(Primitive::Unary { x, op, k: c.checked_sub(k1)? }),
        (Lin::Const(c), Lin::Var(y, k2)) => Some(Primitive::Unary { x: y, op: op.flip(), k: c.checked_sub(k2)? }),
        _ => None,
    }
}

/// Matches `expr` against the supported primitive forms. `is_01` tells
/// whether a variable's universe is included in `{0, 1}`.
pub fn recognize_primitive(expr: &Expr, is_01: &dyn Fn(VarId) -> bool) -> Option<Primitive> {
    if let Some(p) = comparison(expr) {
        return Some(p);
    }
    let Expr::Node(Op::Eq | Op::Iff, ch) = expr else { return None };
    if ch.len() != 2 {
        return None;
    }
    let (z, rel) = match (&ch[0], &ch[1]) {
        (Expr::Var(z), rel @ Expr::Node(..)) | (rel @ Expr::Node(..), Expr::Var(z)) => (*z, rel),
        _ => return None,
    };
    if !is_01(z) {
        return None;
    }
    match comparison(rel)? {
        Primitive::Binary { x, k, op, y } if z != x && z != y => Some(Primitive::ReifBinary { z, x, k, op, y }),
        Primitive::Unary { x, op, k } if z != x => Some(Primitive::ReifUnary { z, x, op, k }),
        _ => None,
    }
}

fn enforce_unary(doms: &mut Domains, x: VarId, op: CmpOp, k: i64) -> bool {
    doms.retain(x, |_, v| op.holds(v, k))
}

fn can_hold_unary(doms: &Domains, x: VarId, op: CmpOp, k: i64) -> bool {
    doms.get(x).values().any(|v| op.holds(v, k))
}

/// AC filtering of `x + k op y`.
fn enforce_binary(doms: &mut Domains, x: VarId, k: i64, op: CmpOp, y: VarId) -> bool {
    match op {
        CmpOp::Lt => {
            let hi = doms.get(y).max_value().saturating_sub(k).saturating_sub(1);
            doms.remove_above(x, hi) && {
                let lo = doms.get(x).min_value().saturating_add(k).saturating_add(1);
                doms.remove_below(y, lo)
            }
        }
        CmpOp::Le => {
            let hi = doms.get(y).max_value().saturating_sub(k);
            doms.remove_above(x, hi) && {
                let lo = doms.get(x).min_value().saturating_add(k);
                doms.remove_below(y, lo)
            }
        }
        CmpOp::Gt => {
            let lo = doms.get(y).min_value().saturating_sub(k).saturating_add(1);
            doms.remove_below(x, lo) && {
                let hi = doms.get(x).max_value().saturating_add(k).saturating_sub(1);
                doms.remove_above(y, hi)
            }
        }
        CmpOp::Ge => {
            let lo = doms.get(y).min_value().saturating_sub(k);
            doms.remove_below(x, lo) && {
                let hi = doms.get(x).max_value().saturating_add(k);
                doms.remove_above(y, hi)
            }
        }
        CmpOp::Eq => {
            let keep_x: Vec<bool> = {
                let (dx, dy) = (doms.get(x), doms.get(y));
                (0..dx.initial_size()).map(|a| dy.contains_value(dx.to_val(a).saturating_add(k))).collect()
            };
            if !doms.retain(x, |a, _| keep_x[a]) {
                return false;
            }
            let keep_y: Vec<bool> = {
                let (dx, dy) = (doms.get(x), doms.get(y));
                (0..dy.initial_size()).map(|b| dx.contains_value(dy.to_val(b).saturating_sub(k))).collect()
            };
            doms.retain(y, |b, _| keep_y[b])
        }
        CmpOp::Ne => {
            for _ in 0..2 {
                if let Some(w) = doms.get(y).single_value() {
                    if !doms.remove_value(x, w.saturating_sub(k)) {
                        return false;
                    }
                }
                if let Some(v) = doms.get(x).single_value() {
                    if !doms.remove_value(y, v.saturating_add(k)) {
                        return false;
                    }
                }
            }
            true
        }
    }
}

/// Whether some pair of current values satisfies `x + k op y`.
fn can_hold_binary(doms: &Domains, x: VarId, k: i64, op: CmpOp, y: VarId) -> bool {
    let (dx, dy) = (doms.get(x), doms.get(y));
    match op {
        CmpOp::Lt => dx.min_value().saturating_add(k) < dy.max_value(),
        CmpOp::Le => dx.min_value().saturating_add(k) <= dy.max_value(),
        CmpOp::Gt => dx.max_value().saturating_add(k) > dy.min_value(),
        CmpOp::Ge => dx.max_value().saturating_add(k) >= dy.min_value(),
        CmpOp::Eq => {
            if dx.size() <= dy.size() {
                dx.values().any(|v| dy.contains_value(v.saturating_add(k)))
            } else {
                dy.values().any(|w| dx.contains_value(w.saturating_sub(k)))
            }
        }
        CmpOp::Ne => match (dx.single_value(), dy.single_value()) {
            (Some(v), Some(w)) => v.saturating_add(k) != w,
            _ => true,
        },
    }
}

/// An intension constraint matching one of the [`Primitive`] forms.
#[derive(Debug)]
pub struct PrimitiveCtr {
    prim: Primitive,
    scope: Vec<VarId>,
}

impl PrimitiveCtr {
    pub fn new(prim: Primitive) -> Self {
        let scope = match prim {
            Primitive::Unary { x, .. } => vec![x],
            Primitive::Binary { x, y, .. } => vec![x, y],
            Primitive::ReifBinary { z, x, y, .. } => vec![z, x, y],
            Primitive::ReifUnary { z, x, .. } => vec![z, x],
        };
        Self { prim, scope }
    }

    pub fn primitive(&self) -> Primitive {
        self.prim
    }
}

impl Constraint for PrimitiveCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "intension"
    }

    fn tags(&self) -> Tags {
        Tags::AC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, v: &[i64]) -> bool {
        match self.prim {
            Primitive::Unary { op, k, .. } => op.holds(v[0], k),
            Primitive::Binary { k, op, .. } => op.holds(v[0].saturating_add(k), v[1]),
            Primitive::ReifBinary { k, op, .. } => (v[0] == 1) == op.holds(v[1].saturating_add(k), v[2]),
            Primitive::ReifUnary { op, k, .. } => (v[0] == 1) == op.holds(v[1], k),
        }
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        match self.prim {
            Primitive::Unary { x, op, k } => enforce_unary(doms, x, op, k),
            Primitive::Binary { x, k, op, y } => enforce_binary(doms, x, k, op, y),
            Primitive::ReifBinary { z, x, k, op, y } => {
                let can_true = can_hold_binary(doms, x, k, op, y);
                let can_false = can_hold_binary(doms, x, k, op.negate(), y);
                if !can_true && !doms.remove_value(z, 1) || !can_false && !doms.remove_value(z, 0) {
                    return false;
                }
                match doms.get(z).single_value() {
                    Some(1) => enforce_binary(doms, x, k, op, y),
                    Some(_) => enforce_binary(doms, x, k, op.negate(), y),
                    None => true,
                }
            }
            Primitive::ReifUnary { z, x, op, k } => {
                let can_true = can_hold_unary(doms, x, op, k);
                let can_false = can_hold_unary(doms, x, op.negate(), k);
                if !can_true && !doms.remove_value(z, 1) || !can_false && !doms.remove_value(z, 0) {
                    return false;
                }
                match doms.get(z).single_value() {
                    Some(1) => enforce_unary(doms, x, op, k),
                    Some(_) => enforce_unary(doms, x, op.negate(), k),
                    None => true,
                }
            }
        }
    }
}
