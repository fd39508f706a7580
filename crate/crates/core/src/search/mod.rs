//! Backtrack search with restarts, last-conflict reasoning and nogoods.

pub mod decision;
pub mod nogood;
mod observer;
pub mod restart;
mod solver;
mod stats;

pub use decision::Decision;
pub use nogood::NogoodStore;
pub use observer::{EventLog, Observer};
pub use restart::{luby, RestartPolicy, Restarter};
pub(crate) use solver::Mode;
pub use solver::{Outcome, RunResult, Solver, SolverOptions, Verdict};
pub use stats::Statistics;
