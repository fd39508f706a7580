use crate::search::{Mode, Outcome, RunResult, Solver, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OptStrategy {
    /// Tighten the bound after each solution (branch and bound).
    #[default]
    Decreasing,
    /// Solve with the bound set to the best possible value, then relax it by one.
    Increasing,
    /// Bisect the interval of possible costs.
    Dichotomic,
}

impl OptStrategy {
    pub const ALL: [Self; 3] = [Self::Decreasing, Self::Increasing, Self::Dichotomic];

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Decreasing => "decreasing",
            Self::Increasing => "increasing",
            Self::Dichotomic => "dichotomic",
        }
    }
}

/// Runs the configured strategy on a problem with an objective.
pub fn optimize(s: &mut Solver) -> Outcome {
    match s.options.strategy {
        OptStrategy::Decreasing => decreasing(s),
        OptStrategy::Increasing => increasing(s),
        OptStrategy::Dichotomic => dichotomic(s),
    }
}

fn unfinished(s: &Solver) -> Outcome {
    let v = if s.last_solution.is_some() { Verdict::Sat } else { Verdict::Unknown };
    s.outcome(v, false)
}

fn finished(s: &Solver) -> Outcome {
    let v = if s.last_solution.is_some() { Verdict::Optimum } else { Verdict::Unsat };
    s.outcome(v, true)
}

fn decreasing(s: &mut Solver) -> Outcome {
    s.mode = Mode::Descend;
    if !s.preprocess() {
        return finished(s);
    }
    match s.search() {
        // Stopped: a cost that cannot be improved
        RunResult::Exhausted | RunResult::Stopped => finished(s),
        _ => unfinished(s),
    }
}

/// Sets the limit, keeping nogoods only if it is at least as tight as the
/// previous one, and propagates at the root.
fn probe_root(s: &mut Solver, limit: i64) -> bool {
    let tighter = match s.limit() {
        Some(prev) => {
            if s.minimize() {
                limit <= prev
            } else {
                limit >= prev
            }
        }
        None => false,
    };
    if !tighter {
        s.clear_nogoods();
    }
    s.rewind(0);
    s.set_limit(Some(limit));
    s.stats.probes += 1;
    s.preprocess()
}

fn root_bounds(s: &mut Solver) -> Option<(i64, i64)> {
    s.mode = Mode::Probe;
    if !s.preprocess() {
        return None;
    }
    s.objective_bounds()
}

fn increasing(s: &mut Solver) -> Outcome {
    let Some((lb, ub)) = root_bounds(s) else { return finished(s) };
    let min = s.minimize();
    let mut limit = if min { lb } else { ub };
    loop {
        if s.timed_out() {
            return unfinished(s);
        }
        if probe_root(s, limit) {
            match s.search() {
                RunResult::Stopped => return finished(s),
                RunResult::Exhausted => {}
                _ => return unfinished(s),
            }
        }
        if (min && limit >= ub) || (!min && limit <= lb) {
            return finished(s);
        }
        limit = if min { limit + 1 } else { limit - 1 };
    }
}

fn dichotomic(s: &mut Solver) -> Outcome {
    let Some((mut lb, mut ub)) = root_bounds(s) else { return finished(s) };
    let min = s.minimize();
    while lb <= ub {
        if s.timed_out() {
            return unfinished(s);
        }
        // minimizing tests obj <= mid, maximizing obj >= mid
        let span = ub as i128 - lb as i128;
        let mid = if min { lb as i128 + span / 2 } else { ub as i128 - span / 2 } as i64;
        let found = probe_root(s, mid) && {
            match s.search() {
                RunResult::Stopped => true,
                RunResult::Exhausted => false,
                _ => return unfinished(s),
            }
        };
        if found {
            let cost = *s.bounds.last().unwrap();
            if min {
                ub = cost - 1;
            } else {
                lb = cost + 1;
            }
        } else if min {
            lb = mid + 1;
        } else {
            ub = mid - 1;
        }
    }
    finished(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constraint::CmpOp;
    use crate::domain::Domain;
    use crate::expr::{Primitive, PrimitiveCtr};
    use crate::gen::{brute_force, random_cop, GenParams};
    use crate::optimization::{ObjectiveCtr, ObjectiveKind};
    use crate::problem::Problem;
    use crate::search::SolverOptions;

    fn run(p: Problem, strategy: OptStrategy) -> Outcome {
        Solver::new(p, SolverOptions { strategy, ..SolverOptions::default() }).solve()
    }

    fn min_x(values: &[i64], extra: Option<i64>) -> Problem {
        let mut p = Problem::new();
        p.add_variable("x", Domain::from_values(values).unwrap());
        if let Some(k) = extra {
            p.add_constraint(Box::new(PrimitiveCtr::new(Primitive::Unary { x: 0, op: CmpOp::Ge, k })));
        }
        p.set_objective(Box::new(ObjectiveCtr::new(ObjectiveKind::Var(0), true)));
        p
    }

    #[test]
    fn minimize_unconstrained_variable() {
        for st in OptStrategy::ALL {
            let out = run(min_x(&[2, 5, 9], None), st);
            assert_eq!(out.verdict, Verdict::Optimum, "{st:?}");
            assert_eq!(out.cost, Some(2));
        }
    }

    #[test]
    fn infeasible_is_unsat() {
        for st in OptStrategy::ALL {
            let out = run(min_x(&[2, 5, 9], Some(10)), st);
            assert_eq!(out.verdict, Verdict::Unsat, "{st:?}");
        }
    }

    // lb = 9, ub = 15 after the root; the first probe (obj <= 12) finds 9
    #[test]
    fn dichotomic_converges() {
        let vals: Vec<i64> = (0..=15).collect();
        let out = run(min_x(&vals, Some(9)), OptStrategy::Dichotomic);
        assert_eq!(out.cost, Some(9));
        assert!(out.stats.probes <= 4, "{}", out.stats.probes);
    }

    #[test]
    fn tight_interval_single_probe() {
        let out = run(min_x(&[4], None), OptStrategy::Dichotomic);
        assert_eq!((out.verdict, out.cost, out.stats.probes), (Verdict::Optimum, Some(4), 1));
    }

    #[test]
    fn decreasing_costs_strictly_improve() {
        let params = GenParams { n_vars: 5, dom: 5, n_ctrs: 3, ..GenParams::default() };
        for seed in 0..100 {
            let out = run(random_cop(&params, seed), OptStrategy::Decreasing);
            let min = random_cop(&params, seed).constraint(random_cop(&params, seed).objective().unwrap()).tags();
            let minimize = !min.contains(crate::constraint::Tags::MAXIMIZE);
            for w in out.bounds.windows(2) {
                assert!(if minimize { w[1] < w[0] } else { w[1] > w[0] }, "seed {seed}: {:?}", out.bounds);
            }
        }
    }

    #[test]
    fn strategies_agree_with_brute_force() {
        let params = GenParams { n_vars: 4, dom: 4, n_ctrs: 3, ..GenParams::default() };
        for seed in 0..150 {
            let p = random_cop(&params, seed);
            let sols = brute_force(&p);
            let minimize = !p.constraint(p.objective().unwrap()).tags().contains(crate::constraint::Tags::MAXIMIZE);
            let costs = sols.iter().map(|s| p.objective_value(s).unwrap());
            let best = if minimize { costs.min() } else { costs.max() };
            for st in OptStrategy::ALL {
                let out = run(random_cop(&params, seed), st);
                assert_eq!(out.cost.filter(|_| out.verdict == Verdict::Optimum), best, "seed {seed} {st:?}");
                if let Some(sol) = &out.solution {
                    assert!(p.is_solution(sol));
                    assert_eq!(p.objective_value(sol), out.cost);
                }
            }
        }
    }
}
