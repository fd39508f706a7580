//! Hooks called by the solver at the main steps of solving.

use crate::constraint::CtrId;
use crate::domain::VarId;

#[allow(unused_variables)]
pub trait Observer: Send {
    fn before_solving(&mut self) {}
    fn before_preprocessing(&mut self) {}
    fn after_preprocessing(&mut self) {}
    fn before_run(&mut self, run: u64) {}
    fn after_run(&mut self, run: u64) {}
    fn before_positive_decision(&mut self, x: VarId, a: usize) {}
    fn before_negative_decision(&mut self, x: VarId, a: usize) {}
    fn after_assignment(&mut self, x: VarId, a: usize) {}
    /// `ctr` is `None` when a nogood failed.
    fn when_wipeout(&mut self, ctr: Option<CtrId>, x: VarId) {}
    fn when_backtrack(&mut self) {}
    fn when_solution(&mut self, values: &[i64], cost: Option<i64>) {}
    fn after_solving(&mut self) {}
}

/// Records event names, in order.
#[derive(Debug, Default, Clone)]
pub struct EventLog {
    pub events: std::sync::Arc<std::sync::Mutex<Vec<String>>>,
}

impl EventLog {
    pub fn take(&self) -> Vec<String> {
        std::mem::take(&mut self.events.lock().unwrap())
    }

    fn push(&self, s: String) {
        self.events.lock().unwrap().push(s);
    }
}

impl Observer for EventLog {
    fn before_solving(&mut self) {
        self.push("beforeSolving".into());
    }
    fn before_preprocessing(&mut self) {
        self.push("beforePreprocessing".into());
    }
    fn after_preprocessing(&mut self) {
        self.push("afterPreprocessing".into());
    }
    fn before_run(&mut self, run: u64) {
        self.push(format!("beforeRun {run}"));
    }
    fn after_run(&mut self, run: u64) {
        self.push(format!("afterRun {run}"));
    }
    fn before_positive_decision(&mut self, x: VarId, a: usize) {
        self.push(format!("positive {x} {a}"));
    }
    fn before_negative_decision(&mut self, x: VarId, a: usize) {
        self.push(format!("negative {x} {a}"));
    }
    fn after_assignment(&mut self, x: VarId, a: usize) {
        self.push(format!("assigned {x} {a}"));
    }
    fn when_wipeout(&mut self, ctr: Option<CtrId>, x: VarId) {
        self.push(format!("wipeout {ctr:?} {x}"));
    }
    fn when_backtrack(&mut self) {
        self.push("backtrack".into());
    }
    fn when_solution(&mut self, _values: &[i64], cost: Option<i64>) {
        self.push(format!("solution {cost:?}"));
    }
    fn after_solving(&mut self) {
        self.push("afterSolving".into());
    }
}
