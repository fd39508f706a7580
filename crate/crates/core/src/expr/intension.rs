use super::Expr;
use crate::constraint::{Constraint, Tags};
use crate::domain::{Domains, VarId};
use crate::sets::NONE;
use crate::tuple::TupleIterator;

/// Intension constraint filtered by the generic AC3^rm scheme.
///
/// Supports are searched with a [`TupleIterator`]; each support found is kept
/// as a residue for every literal it contains and re-validated before any new
/// search.
#[derive(Debug)]
pub struct IntensionCtr {
    scope: Vec<VarId>,
    // variable leaves refer to positions in `scope`
    tree: Expr,
    residues: Vec<Vec<Option<Box<[usize]>>>>,
    use_residues: bool,
    iter: TupleIterator,
    vals: Vec<i64>,
}

impl IntensionCtr {
    /// Builds the constraint over the variables of `expr`, which must be a predicate.
    pub fn new(expr: &Expr, doms: &Domains) -> Self {
        let scope = expr.vars();
        let tree = expr.map_vars(&|x| scope.iter().position(|&y| y == x).unwrap());
        let residues = scope.iter().map(|&x| vec![None; doms.get(x).initial_size()]).collect();
        Self {
            iter: TupleIterator::new(&scope),
            vals: vec![0; scope.len()],
            scope,
            tree,
            residues,
            use_residues: true,
        }
    }

    pub fn without_residues(mut self) -> Self {
        self.use_residues = false;
        self
    }

    /// The tree over scope positions.
    pub fn tree(&self) -> &Expr {
        &self.tree
    }

    fn seek_support(&mut self, doms: &Domains, p: usize, a: usize) -> bool {
        if self.use_residues {
            if let Some(t) = &self.residues[p][a] {
                if t.iter().zip(&self.scope).all(|(&b, &x)| doms.get(x).contains(b)) {
                    return true;
                }
            }
        }
        let mut found = self.iter.first_valid_with(doms, p, a).is_some();
        while found {
            let t = self.iter.current();
            for (q, &b) in t.iter().enumerate() {
                self.vals[q] = doms.get(self.scope[q]).to_val(b);
            }
            if self.tree.eval(&self.vals) != 0 {
                if self.use_residues {
                    let support: Box<[usize]> = t.into();
                    for (q, &b) in support.iter().enumerate() {
                        self.residues[q][b] = Some(support.clone());
                    }
                }
                return true;
            }
            found = self.iter.next_valid(doms).is_some();
        }
        false
    }
}

impl Constraint for IntensionCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "intension"
    }

    fn tags(&self) -> Tags {
        Tags::AC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        self.tree.eval(values) != 0
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        loop {
            let mut changed = false;
            for p in 0..self.scope.len() {
                let x = self.scope[p];
                let mut a = doms.get(x).first();
                while a != NONE {
                    let next = doms.get(x).next(a);
                    if !self.seek_support(doms, p, a) {
                        if !doms.remove(x, a) {
                            return false;
                        }
                        changed = true;
                    }
                    a = next;
                }
            }
            if !changed {
                return true;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::expr::parse_expression;

    fn setup(text: &str, doms: Vec<Domain>) -> (IntensionCtr, Domains) {
        let ds = Domains::new(doms);
        let resolve = |s: &str| s.strip_prefix('x').and_then(|n| n.parse().ok());
        let e = parse_expression(text, &resolve).unwrap();
        (IntensionCtr::new(&e, &ds), ds)
    }

    #[test]
    fn ne_with_fixed_side() {
        let (mut c, mut ds) = setup("ne(x0,x1)", vec![Domain::range(0, 0).unwrap(), Domain::range(0, 1).unwrap()]);
        assert!(c.run_propagator(&mut ds, 0));
        assert_eq!(ds.get(1).values().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn lt_bounds() {
        let (mut c, mut ds) = setup("lt(x0,x1)", vec![Domain::range(0, 2).unwrap(), Domain::range(0, 2).unwrap()]);
        assert!(c.run_propagator(&mut ds, 0));
        assert_eq!(ds.get(0).values().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(ds.get(1).values().collect::<Vec<_>>(), vec![1, 2]);
    }

    #[test]
    fn self_contradiction_wipes_out() {
        let (mut c, mut ds) = setup("lt(x0,x0)", vec![Domain::range(0, 3).unwrap()]);
        assert_eq!(c.scope(), &[0]);
        assert!(!c.run_propagator(&mut ds, 0));
    }
}
