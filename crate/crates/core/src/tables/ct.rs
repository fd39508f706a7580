use super::{Table, TableCheck, STAR};
use crate::constraint::{has_duplicates, Constraint, Tags};
use crate::domain::{Domains, VarId};
use crate::sets::ReversibleSparseBitset;

const UNKNOWN: usize = usize::MAX;

/// Compact-Table: the valid tuples are a reversible sparse bitset, updated
/// from static per-literal support masks.
#[derive(Debug)]
pub struct CtCtr {
    scope: Vec<VarId>,
    table: Table,
    check: TableCheck,
    curr: ReversibleSparseBitset,
    // supports[p][a]: tuples containing literal (p,a), a star counting as any index
    supports: Vec<Vec<Box<[u64]>>>,
    residues: Vec<Vec<usize>>,
    last_sizes: Vec<usize>,
    dups: bool,
    tmp: Vec<u64>,
}

impl CtCtr {
    pub fn new(scope: Vec<VarId>, table: Table, doms: &Domains) -> Self {
        assert!(table.is_positive());
        let n_words = table.len().div_ceil(64);
        let mut supports: Vec<Vec<Box<[u64]>>> = scope
            .iter()
            .map(|&x| vec![vec![0u64; n_words].into_boxed_slice(); doms.get(x).initial_size()])
            .collect();
        for (i, t) in table.tuples().enumerate() {
            for (p, &a) in t.iter().enumerate() {
                if a == STAR {
                    for mask in &mut supports[p] {
                        mask[i / 64] |= 1 << (i % 64);
                    }
                } else {
                    supports[p][a][i / 64] |= 1 << (i % 64);
                }
            }
        }
        Self {
            check: TableCheck::new(&scope, doms),
            curr: ReversibleSparseBitset::full(table.len()),
            residues: supports.iter().map(|m| vec![0; m.len()]).collect(),
            supports,
            last_sizes: vec![UNKNOWN; scope.len()],
            dups: has_duplicates(&scope),
            tmp: vec![0; n_words],
            table,
            scope,
        }
    }

    /// Positions of the tuples currently valid.
    pub fn current_tuples(&self) -> Vec<usize> {
        self.curr.ones()
    }

    fn update_table(&mut self, doms: &Domains, level: usize) {
        for p in 0..self.scope.len() {
            let dom = doms.get(self.scope[p]);
            let size = dom.size();
            if size == self.last_sizes[p] {
                continue;
            }
            let delta = self.last_sizes[p].wrapping_sub(size);
            self.tmp.fill(0);
            if self.last_sizes[p] != UNKNOWN && !self.table.is_starred() && delta < size {
                let mut a = dom.set().last_removed();
                for _ in 0..delta {
                    for (t, m) in self.tmp.iter_mut().zip(self.supports[p][a].iter()) {
                        *t |= m;
                    }
                    a = dom.set().prev_removed(a);
                }
                self.curr.subtract(&self.tmp, level);
            } else {
                for a in dom.iter() {
                    for (t, m) in self.tmp.iter_mut().zip(self.supports[p][a].iter()) {
                        *t |= m;
                    }
                }
                self.curr.intersect_with(&self.tmp, level);
            }
            if self.curr.is_empty() {
                return;
            }
        }
    }

    fn filter_domains(&mut self, doms: &mut Domains) -> bool {
        for p in 0..self.scope.len() {
            let x = self.scope[p];
            if doms.get(x).size() == 1 {
                continue;
            }
            let (curr, supports, residues) = (&self.curr, &self.supports[p], &mut self.residues[p]);
            let ok = doms.retain(x, |a, _| {
                let r = residues[a];
                if curr.word(r) & supports[a][r] != 0 {
                    return true;
                }
                match curr.intersecting_word(&supports[a]) {
                    Some(w) => {
                        residues[a] = w;
                        true
                    }
                    None => false,
                }
            });
            if !ok {
                return false;
            }
        }
        true
    }
}

impl Constraint for CtCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "extension"
    }

    fn tags(&self) -> Tags {
        Tags::AC | Tags::POSITIVE | Tags::STARRED_COMPATIBLE | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        self.check.holds(&self.table, values)
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        let level = doms.level();
        if self.table.is_empty() {
            return false;
        }
        self.update_table(doms, level);
        if self.curr.is_empty() {
            return false;
        }
        if !self.filter_domains(doms) {
            return false;
        }
        if self.dups {
            self.last_sizes.fill(UNKNOWN);
        } else {
            for (p, &x) in self.scope.iter().enumerate() {
                self.last_sizes[p] = doms.get(x).size();
            }
        }
        true
    }

    fn restore_before(&mut self, level: usize) {
        self.curr.restore_before(level);
        self.last_sizes.fill(UNKNOWN);
    }
}

#[cfg(test)]
mod tests {
    use super::super::testing::*;
    use super::super::StrCtr;
    use super::*;
    use crate::domain::Domain;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_valid_tuple_prunes_the_rest() {
        let mut doms = Domains::new(vec![Domain::range(0, 2).unwrap(); 3]);
        let rows = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1], vec![0, 2, 2]];
        let mut c = CtCtr::new(vec![0, 1, 2], Table::from_indexes(3, rows, true).unwrap(), &doms);
        assert!(c.run_propagator(&mut doms, 0));
        doms.set_level(1);
        doms.reduce_to(0, 1);
        assert!(c.run_propagator(&mut doms, 0));
        assert_eq!(state(&doms, &[0, 1, 2]), vec![vec![1], vec![1], vec![0]]);
        assert_eq!(c.current_tuples().len(), 1);
    }

    #[test]
    fn ct_equals_str2_and_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for i in 0..500 {
            let inst = random_instance(&mut rng, i % 3 == 0, true);
            let expected = brute_force(&inst);
            let mut d1 = inst.doms.clone();
            let mut ct = CtCtr::new(inst.scope.clone(), inst.table.clone(), &d1);
            let mut d2 = inst.doms.clone();
            let mut str2 = StrCtr::new(inst.scope.clone(), inst.table.clone(), &d2, true);
            assert_eq!(run(&mut ct, &mut d1), expected, "instance {i}");
            assert_eq!(run(&mut str2, &mut d2), expected, "instance {i}");
        }
    }

    // Incremental (delta) updates across several calls, checked after each
    // call against a fresh brute-force filter.
    #[test]
    fn incremental_updates_stay_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for _ in 0..200 {
            let mut inst = random_instance(&mut rng, false, true);
            let mut ct = CtCtr::new(inst.scope.clone(), inst.table.clone(), &inst.doms);
            let mut ok = ct.run_propagator(&mut inst.doms, 0);
            let mut level = 1;
            while ok {
                let free: Vec<VarId> = inst.scope.iter().copied().filter(|&x| inst.doms.get(x).size() > 1).collect();
                if free.is_empty() {
                    break;
                }
                level += 1;
                inst.doms.set_level(level);
                let x = free[rng.random_range(0..free.len())];
                let vals: Vec<usize> = inst.doms.get(x).iter().collect();
                inst.doms.remove(x, vals[rng.random_range(0..vals.len())]);
                let expected = brute_force(&inst);
                ok = ct.run_propagator(&mut inst.doms, x);
                assert_eq!(ok, expected.is_some());
                if ok {
                    assert_eq!(Some(state(&inst.doms, &inst.scope)), expected);
                    let valid: Vec<usize> = (0..inst.table.len())
                        .filter(|&k| inst.table.tuple(k).iter().enumerate().all(|(p, &a)| inst.doms.get(p).contains(a)))
                        .collect();
                    assert_eq!(ct.current_tuples(), valid);
                }
            }
        }
    }
}
