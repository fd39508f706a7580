//! Propagation engine: a FIFO queue of reduced variables, AC fixpoint and
//! forward checking.

use std::collections::VecDeque;

use crate::constraint::CtrId;
use crate::domain::{Domains, VarId};
use crate::problem::Problem;
use crate::search::nogood::NogoodStore;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PropagationKind {
    #[default]
    Ac,
    Fc,
}

impl PropagationKind {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "AC" => Some(Self::Ac),
            "FC" => Some(Self::Fc),
            _ => None,
        }
    }
}

/// The failure of a propagation episode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conflict {
    /// `None` when a nogood failed.
    pub ctr: Option<CtrId>,
    /// Wiped-out variable, or the variable being processed.
    pub var: VarId,
    /// Size of `var` before the failing call.
    pub dom_before: usize,
    /// Scope variables that were not fixed before the failing call.
    pub futvars: usize,
}

#[derive(Debug, Clone)]
pub struct Propagation {
    kind: PropagationKind,
    queue: VecDeque<VarId>,
    queued: Vec<bool>,
    /// Propagator calls so far.
    pub calls: u64,
}

/// Read access to the parts of the solver state the engine needs.
pub struct Net<'a> {
    pub problem: &'a mut Problem,
    pub enabled: &'a [bool],
    pub nogoods: &'a mut NogoodStore,
}

impl Propagation {
    pub fn new(n_vars: usize, kind: PropagationKind) -> Self {
        Self { kind, queue: VecDeque::new(), queued: vec![false; n_vars], calls: 0 }
    }

    pub fn kind(&self) -> PropagationKind {
        self.kind
    }

    fn push(&mut self, x: VarId) {
        if !self.queued[x] {
            self.queued[x] = true;
            self.queue.push_back(x);
        }
    }

    fn clear(&mut self) {
        for x in self.queue.drain(..) {
            self.queued[x] = false;
        }
    }

    pub fn enqueue_all(&mut self) {
        for x in 0..self.queued.len() {
            self.push(x);
        }
    }

    pub fn enqueue(&mut self, x: VarId) {
        self.push(x);
    }

    fn absorb(&mut self, doms: &mut Domains) {
        for (x, _) in doms.take_changes() {
            self.push(x);
        }
    }

    /// Propagates pending domain changes (and `extra`, run first) with the
    /// configured kind.
    pub fn propagate(&mut self, net: Net<'_>, extra: Option<CtrId>) -> Result<(), Conflict> {
        match self.kind {
            PropagationKind::Ac => self.run_ac(net, extra),
            PropagationKind::Fc => self.run_fc(net, extra),
        }
    }

    /// Calls constraint `c` (a direct check if its scope is fixed).
    fn call(&mut self, net: &mut Net<'_>, c: CtrId, evt: VarId) -> Result<(), Conflict> {
        let Problem { doms, ctrs, .. } = &mut *net.problem;
        let ctr = &mut ctrs[c];
        let ok = match crate::constraint::fixed_values(ctr.scope(), doms) {
            Some(vals) => ctr.is_satisfied_by(&vals),
            None => {
                self.calls += 1;
                ctr.run_propagator(doms, evt)
            }
        };
        if ok {
            Ok(())
        } else {
            Err(self.conflict(doms, Some(c), ctrs[c].scope(), evt))
        }
    }

    fn conflict(&mut self, doms: &mut Domains, ctr: Option<CtrId>, scope: &[VarId], evt: VarId) -> Conflict {
        let changes = doms.take_changes();
        let before = |y: VarId| changes.iter().find(|&&(z, _)| z == y).map_or(doms.get(y).size(), |&(_, s)| s);
        let var = doms.wiped().unwrap_or(evt);
        let mut seen: Vec<VarId> = scope.to_vec();
        seen.sort_unstable();
        seen.dedup();
        let futvars = seen.iter().filter(|&&y| before(y) > 1).count();
        let conflict = Conflict { ctr, var, dom_before: before(var), futvars };
        doms.clear_wiped();
        self.clear();
        conflict
    }

    fn run_extra(&mut self, net: &mut Net<'_>, extra: Option<CtrId>) -> Result<(), Conflict> {
        if let Some(c) = extra.filter(|&c| net.enabled[c]) {
            let evt = net.problem.ctrs[c].scope()[0];
            self.call(net, c, evt)?;
        }
        Ok(())
    }

    /// AC fixpoint: each picked variable has its nogoods propagated, then
    /// every enabled constraint involving it.
    pub fn run_ac(&mut self, mut net: Net<'_>, extra: Option<CtrId>) -> Result<(), Conflict> {
        self.absorb(&mut net.problem.doms);
        self.run_extra(&mut net, extra)?;
        self.absorb(&mut net.problem.doms);
        while let Some(x) = self.queue.pop_front() {
            self.queued[x] = false;
            if !net.nogoods.propagate(&mut net.problem.doms, x) {
                return Err(self.conflict(&mut net.problem.doms, None, &[x], x));
            }
            self.absorb(&mut net.problem.doms);
            for i in 0..net.problem.vars[x].ctrs.len() {
                let c = net.problem.vars[x].ctrs[i];
                if net.enabled[c] {
                    self.call(&mut net, c, x)?;
                    self.absorb(&mut net.problem.doms);
                }
            }
        }
        Ok(())
    }

    /// Forward checking: for every reduced variable that is now fixed,
    /// constraints with exactly one unfixed variable left are filtered once
    /// and fully fixed ones are checked. Variables fixed along the way are
    /// processed in turn.
    pub fn run_fc(&mut self, mut net: Net<'_>, extra: Option<CtrId>) -> Result<(), Conflict> {
        self.run_extra(&mut net, extra)?;
        let mut done = vec![false; self.queued.len()];
        let mut stack: Vec<VarId> = Vec::new();
        let collect = |doms: &mut Domains, stack: &mut Vec<VarId>, done: &mut Vec<bool>| {
            for (y, _) in doms.take_changes() {
                if doms.get(y).size() == 1 && !done[y] {
                    done[y] = true;
                    stack.push(y);
                }
            }
        };
        // queued variables (after a restart) are handled as reduced ones
        let queued: Vec<VarId> = self.queue.drain(..).collect();
        for x in queued {
            self.queued[x] = false;
            if net.problem.doms.get(x).size() == 1 && !done[x] {
                done[x] = true;
                stack.push(x);
            }
        }
        collect(&mut net.problem.doms, &mut stack, &mut done);
        while let Some(x) = stack.pop() {
            if !net.nogoods.propagate(&mut net.problem.doms, x) {
                return Err(self.conflict(&mut net.problem.doms, None, &[x], x));
            }
            collect(&mut net.problem.doms, &mut stack, &mut done);
            for i in 0..net.problem.vars[x].ctrs.len() {
                let c = net.problem.vars[x].ctrs[i];
                if !net.enabled[c] {
                    continue;
                }
                let doms = &net.problem.doms;
                let scope = net.problem.ctrs[c].scope();
                let mut free: Vec<VarId> = scope.iter().copied().filter(|&y| doms.get(y).size() > 1).collect();
                free.sort_unstable();
                free.dedup();
                if free.len() <= 1 {
                    self.call(&mut net, c, x)?;
                    collect(&mut net.problem.doms, &mut stack, &mut done);
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::CmpOp;
    use crate::domain::Domain;
    use crate::expr::{Primitive, PrimitiveCtr};
    use crate::gen::{random_csp, GenParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lt(x: VarId, y: VarId) -> Box<PrimitiveCtr> {
        Box::new(PrimitiveCtr::new(Primitive::Binary { x, k: 0, op: CmpOp::Lt, y }))
    }

    fn ac(p: &mut Problem, order_seed: Option<u64>) -> Result<(), Conflict> {
        let enabled = vec![true; p.n_ctrs()];
        let mut ng = NogoodStore::new(p.n_vars());
        let mut e = Propagation::new(p.n_vars(), PropagationKind::Ac);
        e.enqueue_all();
        if let Some(seed) = order_seed {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let v = e.queue.make_contiguous();
            for i in (1..v.len()).rev() {
                v.swap(i, rng.random_range(0..=i));
            }
        }
        e.run_ac(Net { problem: p, enabled: &enabled, nogoods: &mut ng }, None)
    }

    #[test]
    fn chain_fixpoint() {
        let mut p = Problem::new();
        for name in ["x", "y", "z"] {
            p.add_variable(name, Domain::range(0, 2).unwrap());
        }
        p.add_constraint(lt(0, 1));
        p.add_constraint(lt(1, 2));
        assert!(ac(&mut p, None).is_ok());
        let vals = |p: &Problem| (0..3).map(|x| p.domains().get(x).values().collect::<Vec<_>>()).collect::<Vec<_>>();
        assert_eq!(vals(&p), vec![vec![0], vec![1], vec![2]]);
        // z <= 1 wipes out
        let mut p2 = Problem::new();
        for name in ["x", "y", "z"] {
            p2.add_variable(name, Domain::range(0, 2).unwrap());
        }
        p2.add_constraint(lt(0, 1));
        p2.add_constraint(lt(1, 2));
        p2.add_constraint(Box::new(PrimitiveCtr::new(Primitive::Unary { x: 2, op: CmpOp::Le, k: 1 })));
        let c = ac(&mut p2, None).unwrap_err();
        assert!(c.ctr.is_some());
    }

    #[test]
    fn no_constraints() {
        let mut p = Problem::new();
        p.add_variable("x", Domain::range(0, 2).unwrap());
        assert!(ac(&mut p, None).is_ok());
        assert_eq!(p.domains().get(0).size(), 3);
    }

    #[test]
    fn fc_binary_ne() {
        let mut p = Problem::new();
        p.add_variable("x", Domain::range(0, 2).unwrap());
        p.add_variable("y", Domain::range(0, 2).unwrap());
        p.add_variable("z", Domain::range(0, 2).unwrap());
        p.add_variable("w", Domain::range(0, 2).unwrap());
        p.add_constraint(Box::new(PrimitiveCtr::new(Primitive::Binary { x: 0, k: 0, op: CmpOp::Ne, y: 1 })));
        // x + y + z = 0 stays untouched: two free variables after x := 1
        p.add_constraint(Box::new(crate::globals::SumCtr::new(vec![0, 2, 3], vec![1, 1, 1], CmpOp::Eq, 1)));
        let enabled = vec![true; 2];
        let mut ng = NogoodStore::new(4);
        let mut e = Propagation::new(4, PropagationKind::Fc);
        p.doms.set_level(1);
        p.doms.reduce_to_value(0, 1);
        assert!(e.run_fc(Net { problem: &mut p, enabled: &enabled, nogoods: &mut ng }, None).is_ok());
        assert_eq!(p.domains().get(1).values().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(p.domains().get(2).size(), 3);
        assert_eq!(p.domains().get(3).size(), 3);
    }

    // fixpoints reached from shuffled queues are identical
    #[test]
    fn confluence() {
        for seed in 0..200 {
            let params = GenParams { n_vars: 5, dom: 4, n_ctrs: 6, ..GenParams::default() };
            let mut p1 = random_csp(&params, seed);
            let mut p2 = random_csp(&params, seed);
            let r1 = ac(&mut p1, None).is_ok();
            let r2 = ac(&mut p2, Some(seed + 1000)).is_ok();
            assert_eq!(r1, r2, "seed {seed}");
            if r1 {
                for x in 0..5 {
                    assert!(p1.domains().get(x).iter().eq(p2.domains().get(x).iter()), "seed {seed}");
                }
            }
        }
    }

    // after an assignment, FC keeps a superset of what AC keeps
    #[test]
    fn fc_weaker_than_ac() {
        let mut rng = ChaCha8Rng::seed_from_u64(70);
        for seed in 0..200 {
            let params = GenParams { n_vars: 5, dom: 4, n_ctrs: 6, ..GenParams::default() };
            let mut pa = random_csp(&params, seed);
            let mut pf = random_csp(&params, seed);
            let x = rng.random_range(0..5);
            let a = pa.domains().get(x).iter().nth(rng.random_range(0..pa.domains().get(x).size())).unwrap();
            for p in [&mut pa, &mut pf] {
                p.doms.set_level(1);
                p.doms.reduce_to(x, a);
            }
            let enabled = vec![true; pa.n_ctrs()];
            let mut ng = NogoodStore::new(5);
            let ra = Propagation::new(5, PropagationKind::Ac)
                .run_ac(Net { problem: &mut pa, enabled: &enabled, nogoods: &mut ng }, None)
                .is_ok();
            let rf = Propagation::new(5, PropagationKind::Fc)
                .run_fc(Net { problem: &mut pf, enabled: &enabled, nogoods: &mut ng }, None)
                .is_ok();
            if !ra {
                continue;
            }
            assert!(rf, "seed {seed}: FC failed where AC did not");
            for y in 0..5 {
                for v in pa.domains().get(y).values() {
                    assert!(pf.domains().get(y).contains_value(v), "seed {seed}");
                }
            }
        }
    }

    #[test]
    fn conflict_reports_sizes_before() {
        let mut p = Problem::new();
        p.add_variable("x", Domain::range(0, 3).unwrap());
        p.add_variable("y", Domain::range(0, 3).unwrap());
        p.add_constraint(Box::new(PrimitiveCtr::new(Primitive::Binary { x: 0, k: 4, op: CmpOp::Le, y: 1 })));
        let c = ac(&mut p, None).unwrap_err();
        assert_eq!(c.ctr, Some(0));
        assert_eq!(c.dom_before, 4);
        assert_eq!(c.futvars, 2);
        assert!(!p.domains().has_changes());
    }
}
