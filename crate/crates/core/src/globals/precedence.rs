use crate::constraint::{Constraint, Tags};
use crate::domain::{Domains, VarId};

/// Value precedence: for each consecutive pair `(s, t)` of `values`, if some
/// variable takes `t` then an earlier one takes `s`.
#[derive(Debug, Clone)]
pub struct PrecedenceCtr {
    scope: Vec<VarId>,
    values: Vec<i64>,
}

impl PrecedenceCtr {
    pub fn new(scope: Vec<VarId>, values: Vec<i64>) -> Self {
        Self { scope, values }
    }

    fn filter_pair(&self, doms: &mut Domains, s: i64, t: i64) -> bool {
        // no variable before p can take s, so none up to p can take t
        let p = self.scope.iter().position(|&x| doms.get(x).contains_value(s)).unwrap_or(self.scope.len() - 1);
        for &x in &self.scope[..=p] {
            if !doms.remove_value(x, t) {
                return false;
            }
        }
        true
    }
}

impl Constraint for PrecedenceCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "precedence"
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::NOT_SYMMETRIC
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        self.values.windows(2).all(|w| match values.iter().position(|&v| v == w[1]) {
            None => true,
            Some(i) => values[..i].contains(&w[0]),
        })
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        if self.scope.is_empty() {
            return true;
        }
        loop {
            let before = doms.removals();
            for i in 1..self.values.len() {
                if !self.filter_pair(doms, self.values[i - 1], self.values[i]) {
                    return false;
                }
            }
            if doms.removals() == before {
                return true;
            }
        }
    }
}
