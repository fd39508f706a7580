use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::decision::Decision;
use super::nogood::NogoodStore;
use super::observer::Observer;
use super::restart::{RestartPolicy, Restarter};
use super::stats::Statistics;
use crate::constraint::CtrId;
use crate::domain::{Domains, VarId};
use crate::heuristics::{saved_value, select_value, ValHeuristicKind, VarHeuristic, VarHeuristicKind, WeightStore, Weighting};
use crate::optimization::{optimize, OptStrategy};
use crate::problem::Problem;
use crate::propagation::{Conflict, Net, Propagation, PropagationKind};

#[derive(Debug, Clone)]
pub struct SolverOptions {
    pub var_heuristic: VarHeuristicKind,
    pub anti_varh: bool,
    pub weighting: Weighting,
    pub val_heuristic: ValHeuristicKind,
    /// Prefer values of the last solution (optimization only).
    pub solution_saving: bool,
    pub propagation: PropagationKind,
    pub restarts: bool,
    pub restart_policy: RestartPolicy,
    /// Cutoff of the first run, in wrong decisions.
    pub restart_base: u64,
    pub restart_factor: f64,
    /// Number of runs after which restarts stop.
    pub max_runs: Option<u64>,
    pub last_conflict: bool,
    pub nogoods: bool,
    /// Stop after this many solutions; `None` enumerates them all.
    pub solution_limit: Option<u64>,
    pub strategy: OptStrategy,
    pub timeout: Option<Duration>,
    pub seed: u64,
    /// Largest domain probed by BIVS.
    pub bivs_limit: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            var_heuristic: VarHeuristicKind::Wdeg,
            anti_varh: false,
            weighting: Weighting::Cacd,
            val_heuristic: ValHeuristicKind::First,
            solution_saving: true,
            propagation: PropagationKind::Ac,
            restarts: true,
            restart_policy: RestartPolicy::Geometric,
            restart_base: 100,
            restart_factor: 1.1,
            max_runs: None,
            last_conflict: true,
            nogoods: true,
            solution_limit: Some(1),
            strategy: OptStrategy::Decreasing,
            timeout: None,
            seed: 0,
            bivs_limit: 100,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
    Optimum,
    Unknown,
}

impl Verdict {
    pub fn text(self) -> &'static str {
        match self {
            Verdict::Sat => "SATISFIABLE",
            Verdict::Unsat => "UNSATISFIABLE",
            Verdict::Optimum => "OPTIMUM FOUND",
            Verdict::Unknown => "UNKNOWN",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub verdict: Verdict,
    /// Last (best) solution found.
    pub solution: Option<Vec<i64>>,
    pub cost: Option<i64>,
    /// Costs of the successive improving solutions.
    pub bounds: Vec<i64>,
    pub n_solutions: u64,
    /// Whether the search space was fully explored.
    pub complete: bool,
    pub stats: Statistics,
}

/// How a search ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunResult {
    Exhausted,
    /// Enough solutions found.
    Stopped,
    Timeout,
    Cutoff,
}

/// What to do with a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Satisfy,
    /// Tighten the objective and go on.
    Descend,
    /// Stop at the first solution.
    Probe,
}

pub struct Solver {
    problem: Problem,
    pub options: SolverOptions,
    enabled: Vec<bool>,
    engine: Propagation,
    weights: WeightStore,
    varh: VarHeuristic,
    nogoods: NogoodStore,
    restarter: Restarter,
    decisions: Vec<Decision>,
    depth: usize,
    d: usize,
    lc: Option<VarId>,
    rng: ChaCha8Rng,
    deadline: Option<Instant>,
    pub(crate) stats: Statistics,
    observers: Vec<Box<dyn Observer>>,
    pub(crate) last_solution: Option<Vec<i64>>,
    pub(crate) bounds: Vec<i64>,
    pub(crate) mode: Mode,
}

impl Solver {
    pub fn new(problem: Problem, options: SolverOptions) -> Self {
        let (n, m) = (problem.n_vars(), problem.n_ctrs());
        let d = (0..n).map(|x| problem.domains().get(x).initial_size()).max().unwrap_or(1).max(1);
        Self {
            engine: Propagation::new(n, options.propagation),
            weights: WeightStore::new(options.weighting, n, m),
            varh: VarHeuristic::new(options.var_heuristic, options.anti_varh),
            nogoods: NogoodStore::new(n),
            restarter: Restarter::new(options.restart_policy, options.restart_base, options.restart_factor),
            rng: ChaCha8Rng::seed_from_u64(options.seed),
            enabled: vec![true; m],
            decisions: Vec::new(),
            depth: 0,
            d,
            lc: None,
            deadline: None,
            stats: Statistics::default(),
            observers: Vec::new(),
            last_solution: None,
            bounds: Vec::new(),
            mode: Mode::Satisfy,
            problem,
            options,
        }
    }

    pub fn problem(&self) -> &Problem {
        &self.problem
    }

    pub fn into_problem(self) -> Problem {
        self.problem
    }

    pub fn domains(&self) -> &Domains {
        self.problem.domains()
    }

    /// Number of positive decisions on the stack.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn decisions(&self) -> &[Decision] {
        &self.decisions
    }

    /// Base used to encode decisions.
    pub fn decision_base(&self) -> usize {
        self.d
    }

    pub fn statistics(&self) -> &Statistics {
        &self.stats
    }

    pub fn nogoods(&self) -> &NogoodStore {
        &self.nogoods
    }

    pub fn weights(&self) -> &WeightStore {
        &self.weights
    }

    pub fn add_observer(&mut self, obs: Box<dyn Observer>) {
        self.observers.push(obs);
    }

    pub fn enabled(&self) -> &[bool] {
        &self.enabled
    }

    /// Enables or disables a constraint for subsequent solving.
    pub fn set_enabled(&mut self, c: CtrId, on: bool) {
        assert!(Some(c) != self.problem.objective || on, "the objective cannot be disabled");
        self.enabled[c] = on;
    }

    fn notify(&mut self, f: impl Fn(&mut dyn Observer)) {
        for o in &mut self.observers {
            f(o.as_mut());
        }
    }

    pub(crate) fn timed_out(&self) -> bool {
        self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn restore_to(&mut self, level: usize) {
        self.problem.doms.restore_before(level);
        for c in &mut self.problem.ctrs {
            c.restore_before(level);
        }
    }

    /// Back to the initial state: domains, constraint states, nogoods,
    /// weights, objective limit and statistics.
    pub fn reset(&mut self) {
        self.rewind(0);
        self.nogoods.clear();
        self.weights.reset();
        self.rng = ChaCha8Rng::seed_from_u64(self.options.seed);
        self.last_solution = None;
        self.bounds.clear();
        self.stats = Statistics::default();
        self.engine.calls = 0;
        self.set_limit(None);
    }

    /// Undoes every decision; removals at level 0 are kept when `keep` is 1.
    pub(crate) fn rewind(&mut self, keep: usize) {
        self.restore_to(keep);
        self.problem.doms.set_level(0);
        self.decisions.clear();
        self.depth = 0;
        self.lc = None;
        self.restarter.reset();
    }

    pub(crate) fn clear_nogoods(&mut self) {
        self.nogoods.clear();
    }

    pub(crate) fn set_limit(&mut self, limit: Option<i64>) {
        if let Some(c) = self.problem.objective {
            self.problem.ctrs[c].as_optimizable().unwrap().set_limit(limit);
        }
    }

    pub(crate) fn limit(&self) -> Option<i64> {
        let c = self.problem.objective?;
        self.problem.ctrs[c].as_optimizable_ref().unwrap().limit()
    }

    pub(crate) fn minimize(&self) -> bool {
        self.problem.objective.is_none_or(|c| self.problem.ctrs[c].as_optimizable_ref().unwrap().minimize())
    }

    /// Optimistic bounds of the objective over the current domains.
    pub fn objective_bounds(&self) -> Option<(i64, i64)> {
        let c = self.problem.objective?;
        Some(self.problem.ctrs[c].as_optimizable_ref().unwrap().bounds(self.problem.domains()))
    }

    fn fail(&mut self, conflict: Conflict) {
        self.weights.on_wipeout(&conflict);
        self.notify(|o| o.when_wipeout(conflict.ctr, conflict.var));
    }

    fn propagate(&mut self, with_objective: bool) -> bool {
        let extra = self.problem.objective.filter(|_| with_objective);
        let net = Net { problem: &mut self.problem, enabled: &self.enabled, nogoods: &mut self.nogoods };
        let r = self.engine.propagate(net, extra);
        self.stats.propagator_calls = self.engine.calls;
        match r {
            Ok(()) => true,
            Err(c) => {
                self.fail(c);
                false
            }
        }
    }

    /// Failure caused directly by a decision.
    fn decision_failure(&mut self, x: VarId) {
        let size = self.problem.doms.take_changes().iter().find(|c| c.0 == x).map_or(1, |c| c.1);
        self.problem.doms.clear_wiped();
        self.fail(Conflict { ctr: None, var: x, dom_before: size, futvars: 1 });
    }

    /// Root propagation: constant constraints, unary nogoods, then all
    /// constraints.
    pub fn preprocess(&mut self) -> bool {
        self.notify(|o| o.before_preprocessing());
        let ok = self.root_propagate();
        self.stats.removals = self.problem.doms.removals();
        self.notify(|o| o.after_preprocessing());
        ok
    }

    fn root_propagate(&mut self) -> bool {
        let constant_false = (0..self.problem.n_ctrs()).any(|c| {
            self.enabled[c] && self.problem.ctrs[c].scope().is_empty() && !self.problem.ctrs[c].is_satisfied_by(&[])
        });
        if constant_false {
            return false;
        }
        if !self.nogoods.apply_unary(&mut self.problem.doms) {
            let x = self.problem.doms.wiped().unwrap();
            self.decision_failure(x);
            return false;
        }
        self.engine.enqueue_all();
        self.propagate(true)
    }

    /// Assignment `x = a` at a new level, followed by propagation.
    pub fn decide_positive(&mut self, x: VarId, a: usize) -> bool {
        assert!(self.problem.doms.get(x).contains(a), "value index {a} absent from variable {x}");
        self.notify(|o| o.before_positive_decision(x, a));
        self.depth += 1;
        self.problem.doms.set_level(self.depth);
        self.decisions.push(Decision::positive(x, a, self.d));
        self.stats.nodes += 1;
        self.problem.doms.reduce_to(x, a);
        self.engine.enqueue(x);
        let ok = self.propagate(false);
        if ok {
            self.notify(|o| o.after_assignment(x, a));
        }
        ok
    }

    /// Refutation `x != a` at the current level, followed by propagation.
    pub fn decide_negative(&mut self, x: VarId, a: usize) -> bool {
        assert!(self.problem.doms.get(x).contains(a), "value index {a} absent from variable {x}");
        self.notify(|o| o.before_negative_decision(x, a));
        self.decisions.push(Decision::negative(x, a, self.d));
        if !self.problem.doms.remove(x, a) {
            self.decision_failure(x);
            return false;
        }
        self.propagate(self.problem.objective.is_some())
    }

    /// Undoes the most recent positive decision and refutes it; repeats
    /// while refutations fail. Returns `false` when the search space is
    /// exhausted.
    pub fn backtrack(&mut self) -> bool {
        loop {
            let dec = loop {
                match self.decisions.pop() {
                    None => return false,
                    Some(d) if d.is_positive() => break d,
                    Some(_) => {}
                }
            };
            self.notify(|o| o.when_backtrack());
            self.restore_to(self.depth);
            self.depth -= 1;
            self.problem.doms.set_level(self.depth);
            self.stats.wrong_decisions += 1;
            self.stats.backtracks += 1;
            let (x, a) = dec.literal(self.d);
            if self.decide_negative(x, a) {
                return true;
            }
        }
    }

    /// Pops decisions back to (and including) the last positive one,
    /// restoring the state that preceded it. No refutation is made.
    pub fn undo_positive(&mut self) -> bool {
        while let Some(d) = self.decisions.pop() {
            if d.is_positive() {
                self.restore_to(self.depth);
                self.depth -= 1;
                self.problem.doms.set_level(self.depth);
                return true;
            }
        }
        false
    }

    fn select_var(&mut self) -> Option<VarId> {
        if let Some(x) = self.lc {
            if self.problem.doms.get(x).size() > 1 {
                return Some(x);
            }
            self.lc = None;
        }
        self.varh.select(&self.problem, &self.enabled, &self.weights, &mut self.rng)
    }

    /// Value index for `x`; `None` if BIVS probing proved the node inconsistent.
    fn select_value(&mut self, x: VarId) -> Option<usize> {
        let cop = self.problem.is_cop();
        let dom = self.problem.doms.get(x);
        if cop && self.options.solution_saving {
            if let Some(sol) = &self.last_solution {
                return Some(saved_value(dom, sol[x]).unwrap_or(dom.first()));
            }
        }
        if cop && self.options.val_heuristic == ValHeuristicKind::Bivs && dom.size() <= self.options.bivs_limit {
            return self.bivs(x);
        }
        Some(select_value(self.options.val_heuristic, dom, &mut self.rng))
    }

    /// Probes each value of `x` and returns the one with the best objective
    /// bound. Values whose probe fails are removed.
    fn bivs(&mut self, x: VarId) -> Option<usize> {
        let level = self.depth + 1;
        let minimize = self.minimize();
        let cands: Vec<usize> = self.problem.doms.get(x).iter().collect();
        let mut best: Option<(usize, i64)> = None;
        let mut bad = Vec::new();
        for a in cands {
            self.problem.doms.set_level(level);
            self.problem.doms.reduce_to(x, a);
            let net = Net { problem: &mut self.problem, enabled: &self.enabled, nogoods: &mut self.nogoods };
            if self.engine.propagate(net, None).is_ok() {
                let (lb, ub) = self.objective_bounds().unwrap();
                let score = if minimize { lb } else { ub.saturating_neg() };
                if best.is_none_or(|(_, s)| score < s) {
                    best = Some((a, score));
                }
            } else {
                bad.push(a);
            }
            self.restore_to(level);
            self.problem.doms.set_level(self.depth);
        }
        self.stats.propagator_calls = self.engine.calls;
        if !bad.is_empty() {
            for a in bad {
                if !self.problem.doms.remove(x, a) {
                    self.decision_failure(x);
                    return None;
                }
            }
            if !self.propagate(false) {
                return None;
            }
        }
        let dom = self.problem.doms.get(x);
        Some(best.map(|(a, _)| a).filter(|&a| dom.contains(a)).unwrap_or(dom.first()))
    }

    fn verify_leaf(&self) -> bool {
        let doms = self.problem.domains();
        let mut vals = Vec::new();
        (0..self.problem.n_ctrs()).filter(|&c| self.enabled[c]).all(|c| {
            let ctr = &self.problem.ctrs[c];
            vals.clear();
            vals.extend(ctr.scope().iter().map(|&x| doms.get(x).single_value().unwrap()));
            ctr.is_satisfied_by(&vals)
        })
    }

    /// Records the current leaf; returns whether to stop.
    fn record_solution(&mut self) -> bool {
        let sol = self.problem.doms.instantiation().expect("leaf with an unfixed variable");
        self.stats.solutions += 1;
        let cost = self.problem.objective_value(&sol);
        self.notify(|o| o.when_solution(&sol, cost));
        self.last_solution = Some(sol);
        match self.mode {
            Mode::Satisfy => self.options.solution_limit.is_some_and(|l| self.stats.solutions >= l),
            Mode::Descend => {
                let cost = cost.unwrap();
                self.bounds.push(cost);
                let next = if self.minimize() { cost.checked_sub(1) } else { cost.checked_add(1) };
                match next {
                    Some(l) => {
                        self.set_limit(Some(l));
                        false
                    }
                    // nothing can beat this cost
                    None => true,
                }
            }
            Mode::Probe => {
                self.bounds.push(cost.unwrap());
                true
            }
        }
    }

    fn counting(&self) -> bool {
        self.mode == Mode::Satisfy && self.options.solution_limit != Some(1)
    }

    fn restarts_allowed(&self) -> bool {
        self.options.restarts
            && self.options.max_runs.is_none_or(|m| self.restarter.runs() + 1 < m)
            && !(self.counting() && (!self.options.nogoods || self.nogoods.is_full()))
    }

    /// One run, stopped after `cutoff` wrong decisions.
    fn run(&mut self, cutoff: Option<u64>) -> RunResult {
        let wrong0 = self.stats.wrong_decisions;
        loop {
            if self.timed_out() {
                return RunResult::Timeout;
            }
            match self.select_var() {
                None => {
                    if self.verify_leaf() && self.record_solution() {
                        return RunResult::Stopped;
                    }
                    if !self.backtrack() {
                        return RunResult::Exhausted;
                    }
                }
                Some(x) => {
                    let ok = match self.select_value(x) {
                        Some(a) => self.decide_positive(x, a),
                        None => false,
                    };
                    if ok {
                        if self.lc == Some(x) {
                            self.lc = None;
                        }
                    } else {
                        if self.options.last_conflict {
                            self.lc = Some(x);
                        }
                        if !self.backtrack() {
                            return RunResult::Exhausted;
                        }
                    }
                }
            }
            if cutoff.is_some_and(|c| self.stats.wrong_decisions - wrong0 >= c) {
                return RunResult::Cutoff;
            }
        }
    }

    /// Records nogoods from the current branch and goes back to the root.
    fn restart(&mut self) -> bool {
        if self.options.nogoods {
            for ng in NogoodStore::from_branch(&self.decisions, self.d) {
                if !self.nogoods.add(ng) {
                    break;
                }
            }
            self.stats.nogoods = self.nogoods.len() as u64;
        }
        self.restore_to(1);
        self.problem.doms.set_level(0);
        self.decisions.clear();
        self.depth = 0;
        self.lc = None;
        self.root_propagate()
    }

    /// Runs with restarts until exhaustion, stop or timeout. The root must
    /// have been propagated.
    pub(crate) fn search(&mut self) -> RunResult {
        loop {
            let cutoff = self.restarts_allowed().then(|| self.restarter.next_cutoff());
            let run = self.stats.runs;
            self.stats.runs += 1;
            self.notify(|o| o.before_run(run));
            let r = self.run(cutoff);
            self.notify(|o| o.after_run(run));
            match r {
                RunResult::Cutoff => {
                    if !self.restart() {
                        return RunResult::Exhausted;
                    }
                }
                r => return r,
            }
        }
    }

    pub(crate) fn start_clock(&mut self) -> Instant {
        let now = Instant::now();
        self.deadline = self.options.timeout.map(|t| now + t);
        now
    }

    /// Solves the problem: satisfaction (possibly counting) for a CSP, the
    /// configured optimization strategy for a COP.
    pub fn solve(&mut self) -> Outcome {
        let start = self.start_clock();
        self.notify(|o| o.before_solving());
        let mut outcome = if self.problem.is_cop() { optimize(self) } else { self.satisfy() };
        self.stats.elapsed = start.elapsed();
        self.stats.removals = self.problem.doms.removals();
        self.stats.propagator_calls = self.engine.calls;
        outcome.stats = self.stats.clone();
        self.notify(|o| o.after_solving());
        outcome
    }

    pub(crate) fn outcome(&self, verdict: Verdict, complete: bool) -> Outcome {
        let cost = self.last_solution.as_ref().and_then(|s| self.problem.objective_value(s));
        Outcome {
            verdict,
            solution: self.last_solution.clone(),
            cost,
            bounds: self.bounds.clone(),
            n_solutions: self.stats.solutions,
            complete,
            stats: self.stats.clone(),
        }
    }

    fn satisfy(&mut self) -> Outcome {
        self.mode = Mode::Satisfy;
        if !self.preprocess() {
            return self.outcome(Verdict::Unsat, true);
        }
        let r = self.search();
        let found = self.stats.solutions > 0;
        match r {
            RunResult::Exhausted => self.outcome(if found { Verdict::Sat } else { Verdict::Unsat }, true),
            RunResult::Stopped => self.outcome(Verdict::Sat, false),
            _ => self.outcome(if found { Verdict::Sat } else { Verdict::Unknown }, false),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::CmpOp;
    use crate::domain::Domain;
    use crate::expr::{Primitive, PrimitiveCtr};
    use crate::gen::{brute_force, random_csp, GenParams};
    use crate::search::EventLog;

    fn lt(x: VarId, y: VarId) -> Box<PrimitiveCtr> {
        Box::new(PrimitiveCtr::new(Primitive::Binary { x, k: 0, op: CmpOp::Lt, y }))
    }

    #[test]
    fn contradiction_is_unsat() {
        let mut p = Problem::new();
        p.add_variable("x", Domain::range(0, 3).unwrap());
        p.add_variable("y", Domain::range(0, 3).unwrap());
        p.add_constraint(lt(0, 1));
        p.add_constraint(lt(1, 0));
        let out = Solver::new(p, SolverOptions::default()).solve();
        assert_eq!(out.verdict, Verdict::Unsat);
        assert!(out.complete);
    }

    #[test]
    fn positive_on_singleton() {
        let mut p = Problem::new();
        p.add_variable("x", Domain::range(2, 2).unwrap());
        p.add_variable("y", Domain::range(0, 3).unwrap());
        p.add_constraint(lt(1, 0));
        let mut s = Solver::new(p, SolverOptions::default());
        assert!(s.decide_positive(0, 0));
        assert_eq!(s.depth(), 1);
        assert_eq!(s.domains().level(), 1);
        // a decision on a singleton still triggers propagation
        assert_eq!(s.domains().get(1).max_value(), 1);
    }

    #[test]
    fn negative_emptying_domain() {
        let mut p = Problem::new();
        p.add_variable("x", Domain::range(2, 2).unwrap());
        let mut s = Solver::new(p, SolverOptions::default());
        let log = EventLog::default();
        s.add_observer(Box::new(log.clone()));
        assert!(!s.decide_negative(0, 0));
        assert_eq!(log.take(), vec!["negative 0 0", "wipeout None 0"]);
    }

    #[test]
    fn backtrack_refutes() {
        let mut p = Problem::new();
        p.add_variable("x", Domain::range(0, 2).unwrap());
        p.add_variable("y", Domain::range(0, 2).unwrap());
        p.add_constraint(lt(0, 1));
        let mut s = Solver::new(p, SolverOptions::default());
        assert!(s.preprocess());
        let before = s.domains().snapshot();
        assert!(s.decide_positive(0, 0));
        assert!(s.backtrack());
        assert_eq!(s.depth(), 0);
        assert_eq!(s.statistics().wrong_decisions, 1);
        assert!(!s.domains().get(0).contains(0));
        assert_eq!(s.decisions().last().map(|d| d.is_positive()), Some(false));
        assert_ne!(s.domains().snapshot(), before);
        assert!(!s.backtrack());
    }

    #[test]
    fn observer_order() {
        let mut p = Problem::new();
        p.add_variable("x", Domain::range(0, 1).unwrap());
        p.add_variable("y", Domain::range(0, 1).unwrap());
        p.add_constraint(lt(0, 1));
        let mut s = Solver::new(p, SolverOptions { var_heuristic: VarHeuristicKind::Dom, ..SolverOptions::default() });
        let log = EventLog::default();
        s.add_observer(Box::new(log.clone()));
        assert_eq!(s.solve().verdict, Verdict::Sat);
        assert_eq!(
            log.take(),
            vec!["beforeSolving", "beforePreprocessing", "afterPreprocessing", "beforeRun 0", "solution None", "afterRun 0", "afterSolving"]
        );
    }

    #[test]
    fn run_events_bracket_decisions() {
        let params = GenParams { n_vars: 6, dom: 4, n_ctrs: 10, ..GenParams::default() };
        for seed in 0..30 {
            let p = random_csp(&params, seed);
            let opts = SolverOptions { restart_base: 2, solution_limit: None, ..SolverOptions::default() };
            let mut s = Solver::new(p, opts);
            let log = EventLog::default();
            s.add_observer(Box::new(log.clone()));
            s.solve();
            let mut in_run = false;
            for e in log.take() {
                if e.starts_with("beforeRun") {
                    assert!(!in_run);
                    in_run = true;
                } else if e.starts_with("afterRun") {
                    assert!(in_run);
                    in_run = false;
                } else if e.starts_with("positive") || e.starts_with("backtrack") {
                    assert!(in_run, "seed {seed}: {e} outside a run");
                }
            }
        }
    }

    fn configs() -> Vec<SolverOptions> {
        let mut out = Vec::new();
        for varh in VarHeuristicKind::ALL {
            for (restarts, nogoods, lc) in [(true, true, true), (false, false, false), (true, false, true), (true, true, false)] {
                out.push(SolverOptions {
                    var_heuristic: varh,
                    restarts,
                    nogoods,
                    last_conflict: lc,
                    restart_base: 3,
                    ..SolverOptions::default()
                });
            }
        }
        out
    }

    #[test]
    fn verdicts_match_brute_force() {
        let params = GenParams { n_vars: 4, dom: 4, n_ctrs: 5, ..GenParams::default() };
        let cfgs = configs();
        for seed in 0..300 {
            let expected = brute_force(&random_csp(&params, seed));
            let cfg = cfgs[seed as usize % cfgs.len()].clone();
            let out = Solver::new(random_csp(&params, seed), cfg).solve();
            assert_eq!(out.verdict == Verdict::Sat, !expected.is_empty(), "seed {seed}");
            if let Some(sol) = &out.solution {
                assert!(random_csp(&params, seed).is_solution(sol));
            }
        }
    }

    #[test]
    fn counts_match_brute_force() {
        let params = GenParams { n_vars: 4, dom: 3, n_ctrs: 3, ..GenParams::default() };
        for seed in 0..150 {
            let expected = brute_force(&random_csp(&params, seed)).len() as u64;
            for (restarts, nogoods, prop) in
                [(true, true, PropagationKind::Ac), (false, false, PropagationKind::Ac), (true, true, PropagationKind::Fc)]
            {
                let opts = SolverOptions {
                    solution_limit: None,
                    restarts,
                    nogoods,
                    propagation: prop,
                    restart_base: 1,
                    ..SolverOptions::default()
                };
                let out = Solver::new(random_csp(&params, seed), opts).solve();
                assert_eq!(out.n_solutions, expected, "seed {seed} restarts={restarts} {prop:?}");
                assert!(out.complete);
            }
        }
    }

    #[test]
    fn recorded_nogoods_are_sound() {
        let params = GenParams { n_vars: 6, dom: 4, n_ctrs: 7, ..GenParams::default() };
        for seed in 0..100 {
            let sols = brute_force(&random_csp(&params, seed));
            let opts = SolverOptions { restart_base: 1, restart_factor: 1.0, ..SolverOptions::default() };
            let mut s = Solver::new(random_csp(&params, seed), opts);
            let out = s.solve();
            assert_eq!(out.verdict == Verdict::Sat, !sols.is_empty());
            let p = s.problem();
            for sol in &sols {
                let idx: Vec<usize> = sol.iter().enumerate().map(|(x, &v)| p.domains().get(x).to_idx(v).unwrap()).collect();
                assert!(s.nogoods().satisfied_by(&idx), "seed {seed}");
            }
        }
    }

    #[test]
    fn restart_reproducibility() {
        let params = GenParams { n_vars: 8, dom: 5, n_ctrs: 14, ..GenParams::default() };
        for seed in 0..20 {
            let opts = SolverOptions {
                var_heuristic: VarHeuristicKind::Rand,
                val_heuristic: ValHeuristicKind::Rand,
                restart_base: 2,
                seed,
                solution_limit: None,
                ..SolverOptions::default()
            };
            let a = Solver::new(random_csp(&params, seed), opts.clone()).solve();
            let b = Solver::new(random_csp(&params, seed), opts).solve();
            let strip = |s: &Statistics| Statistics { elapsed: Duration::ZERO, ..s.clone() };
            assert_eq!(strip(&a.stats), strip(&b.stats));
        }
    }

    #[test]
    fn last_conflict_reselects() {
        let mut p = Problem::new();
        p.add_variable("a", Domain::range(0, 2).unwrap());
        p.add_variable("b", Domain::range(0, 4).unwrap());
        let opts = SolverOptions { var_heuristic: VarHeuristicKind::Dom, ..SolverOptions::default() };
        let mut s = Solver::new(p, opts);
        assert_eq!(s.select_var(), Some(0));
        s.lc = Some(1);
        assert_eq!(s.select_var(), Some(1));
        assert!(s.decide_positive(1, 0));
        assert_eq!(s.select_var(), Some(0));
        assert_eq!(s.lc, None);
    }

    #[test]
    fn zero_timeout_is_unknown() {
        let params = GenParams { n_vars: 6, dom: 4, n_ctrs: 4, ..GenParams::default() };
        let opts = SolverOptions { timeout: Some(Duration::ZERO), ..SolverOptions::default() };
        let out = Solver::new(random_csp(&params, 1), opts).solve();
        assert!(matches!(out.verdict, Verdict::Unknown | Verdict::Unsat));
    }
}
