//! Solving many independent problems, one solver per problem.

use crate::problem::Problem;
use crate::search::{Outcome, Solver, SolverOptions};

fn solve_one(p: Problem, opts: &SolverOptions) -> Outcome {
    Solver::new(p, opts.clone()).solve()
}

/// Solves the problems one after the other.
pub fn solve_all_sequential(problems: Vec<Problem>, opts: &SolverOptions) -> Vec<Outcome> {
    problems.into_iter().map(|p| solve_one(p, opts)).collect()
}

/// Solves the problems in parallel when the `parallel` feature is on.
/// Outcomes are returned in input order.
#[cfg(feature = "parallel")]
pub fn solve_all(problems: Vec<Problem>, opts: &SolverOptions) -> Vec<Outcome> {
    use rayon::prelude::*;
    problems.into_par_iter().map(|p| solve_one(p, opts)).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn solve_all(problems: Vec<Problem>, opts: &SolverOptions) -> Vec<Outcome> {
    solve_all_sequential(problems, opts)
}
