//! Constraint solver over finite integer domains.
//!
//! A [`problem::Problem`] holds variables with [`domain::Domain`]s and
//! constraints implementing [`constraint::Constraint`]. A
//! [`search::Solver`] explores it by backtrack search with restarts,
//! propagating at each node; problems with an objective are optimized by
//! one of the strategies in [`optimization`].

pub mod batch;
pub mod constraint;
pub mod domain;
pub mod expr;
pub mod gen;
pub mod globals;
pub mod heuristics;
pub mod model;
pub mod optimization;
pub mod problem;
pub mod propagation;
pub mod search;
pub mod sets;
pub mod tables;
pub mod tuple;

pub use constraint::{CmpOp, Constraint, CtrId, Tags};
pub use domain::{Domain, Domains, VarId};
pub use problem::Problem;
pub use search::{Outcome, Solver, SolverOptions, Verdict};
