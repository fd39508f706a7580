//! Iteration over the Cartesian product of the current domains of a scope.
//! Tuples hold value indexes, not values.

use crate::domain::{Domains, VarId};
use crate::sets::NONE;

#[derive(Debug, Clone)]
pub struct TupleIterator {
    scope: Vec<VarId>,
    tuple: Vec<usize>,
    frozen: Option<usize>,
}

impl TupleIterator {
    pub fn new(scope: &[VarId]) -> Self {
        Self { scope: scope.to_vec(), tuple: vec![0; scope.len()], frozen: None }
    }

    pub fn current(&self) -> &[usize] {
        &self.tuple
    }

    /// Smallest valid tuple, nothing frozen.
    pub fn first_valid(&mut self, doms: &Domains) -> Option<&[usize]> {
        self.frozen = None;
        self.reset_from(doms, 0).then_some(&self.tuple[..])
    }

    /// Smallest valid tuple with position `pos` fixed to index `a`.
    pub fn first_valid_with(&mut self, doms: &Domains, pos: usize, a: usize) -> Option<&[usize]> {
        debug_assert!(doms.get(self.scope[pos]).contains(a));
        self.frozen = Some(pos);
        self.tuple[pos] = a;
        self.reset_from(doms, 0).then_some(&self.tuple[..])
    }

    /// Lexicographic successor of the current tuple, keeping the frozen position.
    pub fn next_valid(&mut self, doms: &Domains) -> Option<&[usize]> {
        for i in (0..self.tuple.len()).rev() {
            if Some(i) == self.frozen {
                continue;
            }
            let next = doms.get(self.scope[i]).next(self.tuple[i]);
            if next != NONE {
                self.tuple[i] = next;
                return self.reset_from(doms, i + 1).then_some(&self.tuple[..]);
            }
        }
        None
    }

    fn reset_from(&mut self, doms: &Domains, start: usize) -> bool {
        for i in start..self.tuple.len() {
            if Some(i) == self.frozen {
                continue;
            }
            let first = doms.get(self.scope[i]).first();
            if first == NONE {
                return false;
            }
            self.tuple[i] = first;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Domain;

    fn doms(sizes: &[usize]) -> Domains {
        Domains::new(sizes.iter().map(|&s| Domain::range(0, s as i64 - 1).unwrap()).collect())
    }

    #[test]
    fn frozen_enumeration() {
        let ds = doms(&[2, 2]);
        let mut it = TupleIterator::new(&[0, 1]);
        assert_eq!(it.first_valid_with(&ds, 0, 1), Some(&[1, 0][..]));
        assert_eq!(it.next_valid(&ds), Some(&[1, 1][..]));
        assert_eq!(it.next_valid(&ds), None);
    }

    #[test]
    fn exhausted_on_empty_domain() {
        let mut ds = doms(&[2, 1]);
        ds.remove(1, 0);
        let mut it = TupleIterator::new(&[0, 1]);
        assert!(it.first_valid_with(&ds, 0, 0).is_none());
    }

    #[test]
    fn matches_brute_force_cross_product() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let sizes: Vec<usize> = (0..3).map(|_| rng.random_range(1..5)).collect();
            let mut ds = doms(&sizes);
            for (x, &s) in sizes.iter().enumerate() {
                for a in 0..s {
                    if ds.get(x).size() > 1 && rng.random_bool(0.3) {
                        ds.remove(x, a);
                    }
                }
            }
            let mut expected = Vec::new();
            for a in 0..sizes[0] {
                for b in 0..sizes[1] {
                    for c in 0..sizes[2] {
                        if ds.get(0).contains(a) && ds.get(1).contains(b) && ds.get(2).contains(c) {
                            expected.push(vec![a, b, c]);
                        }
                    }
                }
            }
            let mut it = TupleIterator::new(&[0, 1, 2]);
            let mut got = Vec::new();
            let mut t = it.first_valid(&ds).map(<[usize]>::to_vec);
            while let Some(tuple) = t {
                got.push(tuple);
                t = it.next_valid(&ds).map(<[usize]>::to_vec);
            }
            assert_eq!(got, expected);
        }
    }
}
