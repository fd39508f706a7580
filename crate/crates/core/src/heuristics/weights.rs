//! Constraint (or variable) weights updated on wipeouts.

use crate::constraint::CtrId;
use crate::domain::VarId;
use crate::propagation::Conflict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Weighting {
    /// One counter per variable, incremented on its wipeouts.
    Var,
    Unit,
    #[default]
    Cacd,
    Chs,
}

impl Weighting {
    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "var" => Some(Self::Var),
            "unit" => Some(Self::Unit),
            "cacd" => Some(Self::Cacd),
            "chs" => Some(Self::Chs),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Var => "var",
            Self::Unit => "unit",
            Self::Cacd => "cacd",
            Self::Chs => "chs",
        }
    }
}

pub const CHS_ALPHA0: f64 = 0.4;
pub const CHS_ALPHA_MIN: f64 = 0.06;
pub const CHS_ALPHA_STEP: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct WeightStore {
    kind: Weighting,
    ctr: Vec<f64>,
    var: Vec<f64>,
    last_conflict: Vec<u64>,
    conflicts: u64,
    alpha: f64,
}

impl WeightStore {
    pub fn new(kind: Weighting, n_vars: usize, n_ctrs: usize) -> Self {
        let init = if kind == Weighting::Chs { 0.0 } else { 1.0 };
        Self {
            kind,
            ctr: vec![init; n_ctrs],
            var: vec![1.0; n_vars],
            last_conflict: vec![0; n_ctrs],
            conflicts: 0,
            alpha: CHS_ALPHA0,
        }
    }

    pub fn kind(&self) -> Weighting {
        self.kind
    }

    pub fn reset(&mut self) {
        *self = Self::new(self.kind, self.var.len(), self.ctr.len());
    }

    /// Weight of constraint `c` (its q-score under CHS).
    pub fn ctr_weight(&self, c: CtrId) -> f64 {
        self.ctr[c]
    }

    pub fn var_weight(&self, x: VarId) -> f64 {
        self.var[x]
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    pub fn on_wipeout(&mut self, conflict: &Conflict) {
        match self.kind {
            Weighting::Var => self.var[conflict.var] += 1.0,
            _ => {
                let Some(c) = conflict.ctr else { return };
                match self.kind {
                    Weighting::Unit => self.ctr[c] += 1.0,
                    Weighting::Cacd => {
                        let k = conflict.futvars.max(1) as f64;
                        let d = conflict.dom_before.max(1) as f64;
                        self.ctr[c] += 1.0 / (k * d);
                    }
                    Weighting::Chs => {
                        let r = 1.0 / ((self.conflicts - self.last_conflict[c]) as f64 + 1.0);
                        self.ctr[c] = (1.0 - self.alpha) * self.ctr[c] + self.alpha * r;
                        self.last_conflict[c] = self.conflicts;
                        self.conflicts += 1;
                        self.alpha = (self.alpha - CHS_ALPHA_STEP).max(CHS_ALPHA_MIN);
                    }
                    Weighting::Var => unreachable!(),
                }
            }
        }
    }

    /// Multiplies every weight by `k`.
    pub fn scale(&mut self, k: f64) {
        self.ctr.iter_mut().chain(self.var.iter_mut()).for_each(|w| *w *= k);
    }
}
