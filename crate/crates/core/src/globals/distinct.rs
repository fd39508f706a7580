use crate::constraint::{has_duplicates, Constraint, Tags};
use crate::domain::{Domains, VarId};

/// Pairwise different values, filtered by removing the value of every fixed
/// variable from the other domains.
#[derive(Debug, Clone)]
pub struct AllDifferentCtr {
    scope: Vec<VarId>,
    stack: Vec<usize>,
    done: Vec<bool>,
}

impl AllDifferentCtr {
    pub fn new(scope: Vec<VarId>) -> Self {
        let n = scope.len();
        Self { scope, stack: Vec::with_capacity(n), done: vec![false; n] }
    }
}

impl Constraint for AllDifferentCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "allDifferent"
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::SYMMETRIC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        let mut v = values.to_vec();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        self.done.fill(false);
        self.stack.clear();
        for (p, &x) in self.scope.iter().enumerate() {
            if doms.get(x).size() == 1 {
                self.stack.push(p);
            }
        }
        while let Some(p) = self.stack.pop() {
            if self.done[p] {
                continue;
            }
            self.done[p] = true;
            let Some(v) = doms.get(self.scope[p]).single_value() else { return false };
            for q in 0..self.scope.len() {
                if q == p {
                    continue;
                }
                let y = self.scope[q];
                let was_single = doms.get(y).size() == 1;
                if !doms.remove_value(y, v) {
                    return false;
                }
                if !was_single && doms.get(y).size() == 1 {
                    self.stack.push(q);
                }
            }
        }
        true
    }
}

/// All variables take the same value; filtered by intersecting the domains.
#[derive(Debug, Clone)]
pub struct AllEqualCtr {
    scope: Vec<VarId>,
    exact: bool,
}

impl AllEqualCtr {
    pub fn new(scope: Vec<VarId>) -> Self {
        Self { exact: !has_duplicates(&scope), scope }
    }
}

/// Restricts every domain of `scope` to the values common to all of them.
pub(crate) fn intersect_domains(scope: &[VarId], doms: &mut Domains) -> bool {
    let Some(&smallest) = scope.iter().min_by_key(|&&x| doms.get(x).size()) else { return true };
    let common: Vec<i64> =
        doms.get(smallest).values().filter(|&v| scope.iter().all(|&y| doms.get(y).contains_value(v))).collect();
    !common.is_empty() && scope.iter().all(|&x| doms.retain(x, |_, v| common.binary_search(&v).is_ok()))
}

impl Constraint for AllEqualCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "allEqual"
    }

    fn tags(&self) -> Tags {
        let strength = if self.exact { Tags::AC } else { Tags::NOT_AC };
        strength | Tags::SYMMETRIC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        values.windows(2).all(|w| w[0] == w[1])
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        intersect_domains(&self.scope, doms)
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::*;
    use crate::domain::Domain;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fixed_value_removed() {
        let mut doms = Domains::new(vec![Domain::range(1, 1).unwrap(), Domain::range(1, 2).unwrap()]);
        assert!(AllDifferentCtr::new(vec![0, 1]).run_propagator(&mut doms, 0));
        assert_eq!(doms.get(1).single_value(), Some(2));
    }

    #[test]
    fn pigeonhole_not_detected_at_root() {
        let mut doms = Domains::new(vec![Domain::range(0, 1).unwrap(); 3]);
        assert!(AllDifferentCtr::new(vec![0, 1, 2]).run_propagator(&mut doms, 0));
        assert_eq!(doms.get(2).size(), 2);
    }

    #[test]
    fn all_equal_intersection() {
        let mut doms = Domains::new(vec![Domain::range(0, 1).unwrap(), Domain::range(1, 2).unwrap()]);
        assert!(AllEqualCtr::new(vec![0, 1]).run_propagator(&mut doms, 0));
        assert_eq!(doms.get(0).single_value(), Some(1));
        assert_eq!(doms.get(1).single_value(), Some(1));
    }

    #[test]
    fn random_against_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..400 {
            let n = rng.random_range(1..=4);
            let doms = random_doms(&mut rng, n, 0, 4);
            check(Box::new(AllDifferentCtr::new((0..n).collect())), doms.clone(), n, &|t| {
                (0..t.len()).all(|i| (i + 1..t.len()).all(|j| t[i] != t[j]))
            });
            check(Box::new(AllEqualCtr::new((0..n).collect())), doms, n, &|t| t.iter().all(|&v| v == t[0]));
        }
    }
}
