//! Objectives and the strategies driving optimization.

mod strategy;

pub use strategy::{optimize, OptStrategy};

use crate::constraint::{CmpOp, Constraint, Tags};
use crate::domain::{Domains, VarId};
use crate::globals::{nvalues_bounds, sum_bounds, Condition, MinMaxCtr, SumCtr};

/// What a constraint must offer to represent an objective.
pub trait Optimizable {
    fn minimize(&self) -> bool;

    /// Objective value of a full instantiation of the scope.
    fn objective_value(&self, values: &[i64]) -> i64;

    /// Optimistic bounds of the objective over the current domains.
    fn bounds(&self, doms: &Domains) -> (i64, i64);

    /// Current bound: the objective must be `<= limit` when minimizing,
    /// `>= limit` when maximizing.
    fn limit(&self) -> Option<i64>;

    fn set_limit(&mut self, limit: Option<i64>);
}

/// The objective functions supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveKind {
    Var(VarId),
    Sum { scope: Vec<VarId>, coeffs: Vec<i64> },
    Minimum(Vec<VarId>),
    Maximum(Vec<VarId>),
    NValues(Vec<VarId>),
}

#[derive(Debug, Clone)]
enum Inner {
    Var,
    Sum(SumCtr),
    MinMax(MinMaxCtr),
    NValues,
}

/// Objective constraint: enforces the current limit, nothing while unbounded.
#[derive(Debug, Clone)]
pub struct ObjectiveCtr {
    kind: ObjectiveKind,
    scope: Vec<VarId>,
    minimize: bool,
    limit: Option<i64>,
    inner: Inner,
}

fn clamp(v: i128) -> i64 {
    v.clamp(i64::MIN as i128, i64::MAX as i128) as i64
}

impl ObjectiveCtr {
    pub fn new(kind: ObjectiveKind, minimize: bool) -> Self {
        let (scope, inner) = match &kind {
            ObjectiveKind::Var(x) => (vec![*x], Inner::Var),
            ObjectiveKind::Sum { scope, coeffs } => {
                assert_eq!(scope.len(), coeffs.len());
                // null terms do not count in the filtering
                let (sc, co): (Vec<VarId>, Vec<i64>) = scope.iter().zip(coeffs).filter(|t| *t.1 != 0).unzip();
                (scope.clone(), Inner::Sum(SumCtr::new(sc, co, CmpOp::Le, 0)))
            }
            ObjectiveKind::Minimum(list) | ObjectiveKind::Maximum(list) => {
                let max = matches!(kind, ObjectiveKind::Maximum(_));
                (list.clone(), Inner::MinMax(MinMaxCtr::new(list.clone(), max, Condition::cst(CmpOp::Le, 0))))
            }
            ObjectiveKind::NValues(list) => (list.clone(), Inner::NValues),
        };
        assert!(!scope.is_empty(), "objective over no variable");
        Self { kind, scope, minimize, limit: None, inner }
    }

    pub fn kind(&self) -> &ObjectiveKind {
        &self.kind
    }

    fn op(&self) -> CmpOp {
        if self.minimize {
            CmpOp::Le
        } else {
            CmpOp::Ge
        }
    }
}

impl Optimizable for ObjectiveCtr {
    fn minimize(&self) -> bool {
        self.minimize
    }

    fn objective_value(&self, values: &[i64]) -> i64 {
        match &self.kind {
            ObjectiveKind::Var(_) => values[0],
            ObjectiveKind::Sum { coeffs, .. } => {
                clamp(values.iter().zip(coeffs).map(|(&v, &c)| v as i128 * c as i128).sum())
            }
            ObjectiveKind::Minimum(_) => *values.iter().min().unwrap(),
            ObjectiveKind::Maximum(_) => *values.iter().max().unwrap(),
            ObjectiveKind::NValues(_) => {
                let mut v = values.to_vec();
                v.sort_unstable();
                v.dedup();
                v.len() as i64
            }
        }
    }

    fn bounds(&self, doms: &Domains) -> (i64, i64) {
        match (&self.kind, &self.inner) {
            (ObjectiveKind::Var(x), _) => (doms.get(*x).min_value(), doms.get(*x).max_value()),
            (ObjectiveKind::Sum { scope, coeffs }, _) => {
                let (lo, hi) = sum_bounds(scope, coeffs, doms);
                (clamp(lo), clamp(hi))
            }
            (_, Inner::MinMax(m)) => m.bounds(doms),
            (ObjectiveKind::NValues(list), _) => {
                let (lb, ub) = nvalues_bounds(list, doms);
                (lb.max(1), ub)
            }
            _ => unreachable!(),
        }
    }

    fn limit(&self) -> Option<i64> {
        self.limit
    }

    fn set_limit(&mut self, limit: Option<i64>) {
        self.limit = limit;
        if let Some(l) = limit {
            let op = self.op();
            match &mut self.inner {
                Inner::Sum(s) => s.set_limit(op, l),
                Inner::MinMax(m) => m.set_condition(Condition::cst(op, l)),
                Inner::Var | Inner::NValues => {}
            }
        }
    }
}

impl Constraint for ObjectiveCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        match self.kind {
            ObjectiveKind::Var(_) => "variable",
            ObjectiveKind::Sum { .. } => "sum",
            ObjectiveKind::Minimum(_) => "minimum",
            ObjectiveKind::Maximum(_) => "maximum",
            ObjectiveKind::NValues(_) => "nValues",
        }
    }

    fn tags(&self) -> Tags {
        let t = Tags::CALL_COMPLETE_FILTERING | if self.minimize { Tags::empty() } else { Tags::MAXIMIZE };
        match self.kind {
            ObjectiveKind::Var(_) => t | Tags::AC,
            _ => t | Tags::NOT_AC,
        }
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        self.limit.is_none_or(|l| self.op().holds(self.objective_value(values), l))
    }

    fn run_propagator(&mut self, doms: &mut Domains, evt: VarId) -> bool {
        let Some(l) = self.limit else { return true };
        match &mut self.inner {
            Inner::Var => {
                let x = self.scope[0];
                if self.minimize {
                    doms.remove_above(x, l)
                } else {
                    doms.remove_below(x, l)
                }
            }
            Inner::Sum(s) => s.filter(doms),
            Inner::MinMax(m) => m.run_propagator(doms, evt),
            Inner::NValues => {
                let (lb, ub) = nvalues_bounds(&self.scope, doms);
                if self.minimize {
                    lb <= l
                } else {
                    ub >= l
                }
            }
        }
    }

    fn as_optimizable(&mut self) -> Option<&mut dyn Optimizable> {
        Some(self)
    }

    fn as_optimizable_ref(&self) -> Option<&dyn Optimizable> {
        Some(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;
    use crate::globals::testing::random_doms;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sum_limit_after_solution() {
        let mut doms = Domains::new(vec![Domain::range(0, 9).unwrap(); 2]);
        let mut o = ObjectiveCtr::new(ObjectiveKind::Sum { scope: vec![0, 1], coeffs: vec![1, 1] }, true);
        assert!(o.run_propagator(&mut doms, 0));
        assert_eq!(doms.get(0).size(), 10);
        // first solution of cost 12: sum <= 11
        o.set_limit(Some(11));
        assert!(o.is_satisfied_by(&[5, 6]));
        assert!(!o.is_satisfied_by(&[6, 6]));
        doms.reduce_to_value(0, 9);
        assert!(o.run_propagator(&mut doms, 0));
        assert_eq!(doms.get(1).max_value(), 2);
    }

    #[test]
    fn maximization_mirror() {
        let mut doms = Domains::new(vec![Domain::range(0, 9).unwrap(); 2]);
        let mut o = ObjectiveCtr::new(ObjectiveKind::Sum { scope: vec![0, 1], coeffs: vec![1, 1] }, false);
        o.set_limit(Some(13));
        assert!(o.is_satisfied_by(&[6, 7]) && !o.is_satisfied_by(&[6, 6]));
        doms.reduce_to_value(0, 5);
        assert!(o.run_propagator(&mut doms, 0));
        assert_eq!(doms.get(1).min_value(), 8);
    }

    #[test]
    fn variable_objective_bounds() {
        let mut doms = Domains::new(vec![Domain::from_values(&[2, 5, 9]).unwrap()]);
        let mut o = ObjectiveCtr::new(ObjectiveKind::Var(0), true);
        assert_eq!(o.bounds(&doms), (2, 9));
        o.set_limit(Some(4));
        assert!(o.run_propagator(&mut doms, 0));
        assert_eq!(doms.get(0).single_value(), Some(2));
        o.set_limit(Some(1));
        assert!(!o.run_propagator(&mut doms, 0));
    }

    #[test]
    fn singleton_bounds_are_exact() {
        let doms = Domains::new(vec![Domain::range(3, 3).unwrap(), Domain::range(-1, -1).unwrap()]);
        let kinds = [
            ObjectiveKind::Sum { scope: vec![0, 1], coeffs: vec![2, 3] },
            ObjectiveKind::Minimum(vec![0, 1]),
            ObjectiveKind::Maximum(vec![0, 1]),
            ObjectiveKind::NValues(vec![0, 1]),
        ];
        for k in kinds {
            let o = ObjectiveCtr::new(k, true);
            let v = o.objective_value(&[3, -1]);
            assert_eq!(o.bounds(&doms), (v, v), "{:?}", o.kind());
        }
    }

    // bounds bracket every objective value reachable in the current domains
    #[test]
    fn bounds_bracket_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(60);
        for _ in 0..300 {
            let n = rng.random_range(1..=4);
            let doms = random_doms(&mut rng, n, -2, 3);
            let scope: Vec<VarId> = (0..n).collect();
            let kind = match rng.random_range(0..5) {
                0 => ObjectiveKind::Var(0),
                1 => ObjectiveKind::Sum { scope, coeffs: (0..n).map(|_| rng.random_range(-3..=3)).collect() },
                2 => ObjectiveKind::Minimum(scope),
                3 => ObjectiveKind::Maximum(scope),
                _ => ObjectiveKind::NValues(scope),
            };
            let o = ObjectiveCtr::new(kind, true);
            let (lb, ub) = o.bounds(&doms);
            let vals: Vec<Vec<i64>> = o.scope().iter().map(|&x| doms.get(x).values().collect()).collect();
            let total: usize = vals.iter().map(Vec::len).product();
            for mut k in 0..total {
                let mut t = vec![0; vals.len()];
                for (i, v) in vals.iter().enumerate() {
                    t[i] = v[k % v.len()];
                    k /= v.len();
                }
                let c = o.objective_value(&t);
                assert!(lb <= c && c <= ub, "{:?} {lb} {ub} {c}", o.kind());
            }
        }
    }
}
