//! Builder from a parsed document to a core problem.

use cpsolve::constraint::{CmpOp, Constraint};
use cpsolve::domain::Domain;
use cpsolve::expr::{Expr, Op};
use cpsolve::globals::{
    AllEqualCtr, ChannelCtr, CountCtr, ElementCtr, LexCtr, MinMaxCtr, NValuesCtr, Operand, OrderedCtr, PrecedenceCtr,
    SumCtr,
};
use cpsolve::model::{all_different, intension};
use cpsolve::optimization::ObjectiveCtr;
use cpsolve::tables::{extension, Table, TableAlgo};
use cpsolve::{Problem, VarId};

use crate::doc::{CtrDoc, InstanceDoc};
use crate::error::XcspError;

fn cmp(op: CmpOp) -> Op {
    match op {
        CmpOp::Lt => Op::Lt,
        CmpOp::Le => Op::Le,
        CmpOp::Ge => Op::Ge,
        CmpOp::Gt => Op::Gt,
        CmpOp::Eq => Op::Eq,
        CmpOp::Ne => Op::Ne,
    }
}

/// Builds with Compact-Table for positive tables.
pub fn build(doc: &InstanceDoc) -> Result<Problem, XcspError> {
    build_with(doc, TableAlgo::Ct)
}

pub fn build_with(doc: &InstanceDoc, algo: TableAlgo) -> Result<Problem, XcspError> {
    let mut p = Problem::new();
    for v in &doc.vars {
        let d = Domain::from_values(&v.values).map_err(|e| XcspError::Build { index: 0, msg: format!("{}: {e}", v.name) })?;
        p.add_variable(v.name.clone(), d);
    }
    for (i, c) in doc.ctrs.iter().enumerate() {
        for ctr in constraint(&mut p, i, c, algo)? {
            p.add_constraint(ctr);
        }
    }
    if let Some(o) = &doc.objective {
        p.set_objective(Box::new(ObjectiveCtr::new(o.kind.clone(), o.minimize)));
    }
    Ok(p)
}

fn constraint(p: &mut Problem, index: usize, c: &CtrDoc, algo: TableAlgo) -> Result<Vec<Box<dyn Constraint>>, XcspError> {
    let doms = p.domains();
    let one = |c: Box<dyn Constraint>| Ok(vec![c]);
    match c {
        CtrDoc::Extension { list, tuples, positive } => {
            if !positive && tuples.iter().flatten().any(Option::is_none) {
                return Err(XcspError::StarredNegative(index));
            }
            let refs: Vec<&Domain> = list.iter().map(|&x| doms.get(x)).collect();
            let (table, dropped) =
                Table::from_values(&refs, tuples, *positive).map_err(|e| XcspError::Build { index, msg: e.to_string() })?;
            let ctr = extension(list.clone(), table, algo, doms);
            p.note_dropped_tuples(dropped);
            one(ctr)
        }
        CtrDoc::Intension(e) => one(intension(e, doms)),
        CtrDoc::AllDifferent(terms) => Ok(all_different(terms, doms)),
        CtrDoc::AllEqual(list) => one(Box::new(AllEqualCtr::new(list.clone()))),
        CtrDoc::Ordered { list, op } => one(Box::new(OrderedCtr::new(list.clone(), *op))),
        CtrDoc::Lex { rows, op } => one(Box::new(LexCtr::new(rows, *op))),
        CtrDoc::Precedence { list, values } => one(Box::new(PrecedenceCtr::new(list.clone(), values.clone()))),
        CtrDoc::Sum { list, coeffs, cond } => {
            // a variable right-hand side moves to the left with coefficient -1
            let mut terms: Vec<(VarId, i64)> = Vec::new();
            let mut add = |x: VarId, c: i64| match terms.iter_mut().find(|t| t.0 == x) {
                Some(t) => t.1 += c,
                None => terms.push((x, c)),
            };
            list.iter().zip(coeffs).for_each(|(&x, &c)| add(x, c));
            let k = match cond.operand {
                Operand::Const(k) => k,
                Operand::Var(z) => {
                    add(z, -1);
                    0
                }
            };
            terms.retain(|t| t.1 != 0);
            if terms.is_empty() {
                // constant sum 0: satisfied or never
                let x = list[0];
                let e = Expr::node(if cond.op.holds(0, k) { Op::Eq } else { Op::Ne }, vec![Expr::var(x), Expr::var(x)]);
                return one(intension(&e, doms));
            }
            let (sc, co) = terms.into_iter().unzip();
            one(Box::new(SumCtr::new(sc, co, cond.op, k)))
        }
        CtrDoc::Count { list, values, cond } => match cond.operand {
            Operand::Const(k) => one(Box::new(CountCtr::new(list.clone(), values.clone(), cond.op, k))),
            Operand::Var(z) => {
                let set = Expr::node(Op::Set, values.iter().map(|&v| Expr::cst(v)).collect());
                let mut members: Vec<Expr> = list.iter().map(|&x| Expr::node(Op::In, vec![Expr::var(x), set.clone()])).collect();
                let count = if members.len() == 1 { members.pop().unwrap() } else { Expr::node(Op::Add, members) };
                one(intension(&Expr::node(cmp(cond.op), vec![count, Expr::var(z)]), doms))
            }
        },
        CtrDoc::NValues { list, cond } => match cond.operand {
            Operand::Const(k) => one(Box::new(NValuesCtr::new(list.clone(), cond.op, k))),
            Operand::Var(_) => Err(XcspError::Build { index, msg: "nValues with a variable condition".into() }),
        },
        CtrDoc::Minimum { list, cond } => one(Box::new(MinMaxCtr::new(list.clone(), false, *cond))),
        CtrDoc::Maximum { list, cond } => one(Box::new(MinMaxCtr::new(list.clone(), true, *cond))),
        CtrDoc::Element { list, start, index: i, value } => {
            one(Box::new(ElementCtr::new(list.clone(), *start, *i, *value)))
        }
        CtrDoc::Channel { list, list2 } => one(Box::new(ChannelCtr::new(list.clone(), list2.clone()))),
    }
}
