//! Deletion-based extraction of an unsatisfiable core.

use std::time::{Duration, Instant};

use cpsolve::constraint::CtrId;
use cpsolve::{Problem, Solver, SolverOptions, Verdict};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Core {
    /// Constraints of the core, in declaration order.
    pub ctrs: Vec<CtrId>,
    /// Whether every removal was tested to completion.
    pub minimal: bool,
    /// Number of solver calls made.
    pub checks: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("instance is satisfiable")]
    Satisfiable,
    #[error("unsatisfiability not proved within the budget")]
    Unknown,
}

/// Scans constraints in declaration order: a constraint stays disabled if
/// the rest remains unsatisfiable. `options.timeout` bounds each check and
/// `budget` the whole extraction; a check that does not complete keeps the
/// constraint and the core is flagged non-minimal.
pub fn extract_core(problem: Problem, mut options: SolverOptions, budget: Option<Duration>) -> Result<Core, CoreError> {
    options.solution_limit = Some(1);
    let start = Instant::now();
    let objective = problem.objective();
    let m = problem.n_ctrs();
    let mut s = Solver::new(problem, options);
    let mut checks = 1;
    match s.solve().verdict {
        Verdict::Unsat => {}
        Verdict::Unknown => return Err(CoreError::Unknown),
        _ => return Err(CoreError::Satisfiable),
    }
    let mut minimal = true;
    for c in (0..m).filter(|&c| Some(c) != objective) {
        if budget.is_some_and(|b| start.elapsed() >= b) {
            minimal = false;
            break;
        }
        s.set_enabled(c, false);
        s.reset();
        checks += 1;
        match s.solve().verdict {
            Verdict::Unsat => {}
            Verdict::Unknown => {
                minimal = false;
                s.set_enabled(c, true);
            }
            _ => s.set_enabled(c, true),
        }
    }
    let ctrs = (0..m).filter(|&c| s.enabled()[c] && Some(c) != objective).collect();
    Ok(Core { ctrs, minimal, checks })
}
