//! Helpers turning modeling constructs into constraint objects.

use crate::constraint::Constraint;
use crate::domain::Domains;
use crate::expr::{recognize_primitive, Expr, IntensionCtr, Op, PrimitiveCtr};
use crate::globals::AllDifferentCtr;

/// Constraint for a predicate: a primitive when the form is recognized,
/// the generic AC3^rm scheme otherwise.
pub fn intension(expr: &Expr, doms: &Domains) -> Box<dyn Constraint> {
    let is_01 = |x| doms.get(x).universe().iter().all(|&v| v == 0 || v == 1);
    match recognize_primitive(expr, &is_01) {
        Some(p) => Box::new(PrimitiveCtr::new(p)),
        None => Box::new(IntensionCtr::new(expr, doms)),
    }
}

/// allDifferent over expressions. A plain list of variables gets the
/// dedicated propagator; otherwise the expressions are pairwise different.
pub fn all_different(exprs: &[Expr], doms: &Domains) -> Vec<Box<dyn Constraint>> {
    let vars: Option<Vec<usize>> = exprs.iter().map(|e| if let Expr::Var(x) = e { Some(*x) } else { None }).collect();
    if let Some(vars) = vars {
        return vec![Box::new(AllDifferentCtr::new(vars))];
    }
    let mut out = Vec::new();
    for i in 0..exprs.len() {
        for j in i + 1..exprs.len() {
            out.push(intension(&Expr::node(Op::Ne, vec![exprs[i].clone(), exprs[j].clone()]), doms));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;

    #[test]
    fn recognized_forms() {
        let doms = Domains::new(vec![Domain::range(0, 3).unwrap(), Domain::range(0, 3).unwrap()]);
        let eq = Expr::node(Op::Eq, vec![Expr::var(0), Expr::var(1)]);
        assert!(format!("{:?}", intension(&eq, &doms)).starts_with("PrimitiveCtr"));
        let mul = Expr::node(Op::Eq, vec![Expr::node(Op::Mul, vec![Expr::var(0), Expr::var(1)]), Expr::cst(2)]);
        assert!(format!("{:?}", intension(&mul, &doms)).starts_with("IntensionCtr"));
    }

    #[test]
    fn all_different_shapes() {
        let doms = Domains::new(vec![Domain::range(0, 3).unwrap(); 3]);
        let vars: Vec<Expr> = (0..3).map(Expr::var).collect();
        assert_eq!(all_different(&vars, &doms).len(), 1);
        let shifted: Vec<Expr> = (0..3).map(|i| Expr::node(Op::Add, vec![Expr::var(i), Expr::cst(i as i64)])).collect();
        let cs = all_different(&shifted, &doms);
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| format!("{c:?}").starts_with("PrimitiveCtr")));
    }
}
