//! Variable and value ordering heuristics.

mod weights;

pub use weights::{WeightStore, Weighting, CHS_ALPHA0, CHS_ALPHA_MIN, CHS_ALPHA_STEP};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::constraint::Tags;
use crate::domain::{Domain, Domains, VarId};
use crate::problem::Problem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarHeuristicKind {
    Rand,
    Dom,
    DDegOnDom,
    #[default]
    Wdeg,
    WdegOnDom,
}

impl VarHeuristicKind {
    pub const ALL: [Self; 5] = [Self::Rand, Self::Dom, Self::DDegOnDom, Self::Wdeg, Self::WdegOnDom];

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Rand => "Rand",
            Self::Dom => "Dom",
            Self::DDegOnDom => "DDegOnDom",
            Self::Wdeg => "Wdeg",
            Self::WdegOnDom => "WdegOnDom",
        }
    }

    /// Whether the best variable is the one with the greatest score.
    pub fn tags(self) -> Tags {
        match self {
            Self::Wdeg => Tags::MAXIMIZE,
            _ => Tags::empty(),
        }
    }

    pub fn uses_weights(self) -> bool {
        matches!(self, Self::Wdeg | Self::WdegOnDom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValHeuristicKind {
    #[default]
    First,
    Last,
    Rand,
    Bivs,
}

impl ValHeuristicKind {
    pub const ALL: [Self; 4] = [Self::First, Self::Last, Self::Rand, Self::Bivs];

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::First => "First",
            Self::Last => "Last",
            Self::Rand => "Rand",
            Self::Bivs => "Bivs",
        }
    }
}

/// Variable selection: argmin of the score over unfixed variables
/// (argmax for maximizing heuristics), inverted by `anti`; ties go to the
/// smallest id.
#[derive(Debug, Clone)]
pub struct VarHeuristic {
    pub kind: VarHeuristicKind,
    pub anti: bool,
}

impl VarHeuristic {
    pub fn new(kind: VarHeuristicKind, anti: bool) -> Self {
        Self { kind, anti }
    }

    fn maximize(&self) -> bool {
        self.kind.tags().contains(Tags::MAXIMIZE)
    }

    /// Constraints on `x` that have at least `min_free` unfixed variables
    /// (counting `x`).
    fn live_ctrs<'a>(
        problem: &'a Problem,
        enabled: &'a [bool],
        x: VarId,
        min_free: usize,
    ) -> impl Iterator<Item = usize> + 'a {
        let doms = problem.domains();
        problem.variable(x).constraints().iter().copied().filter(move |&c| {
            enabled[c] && problem.objective() != Some(c) && {
                let mut free = 0;
                let scope = problem.constraint(c).scope();
                for (i, &y) in scope.iter().enumerate() {
                    if doms.get(y).size() > 1 && !scope[..i].contains(&y) {
                        free += 1;
                        if free >= min_free {
                            return true;
                        }
                    }
                }
                false
            }
        })
    }

    fn wdeg(problem: &Problem, enabled: &[bool], weights: &WeightStore, x: VarId) -> f64 {
        if weights.kind() == Weighting::Var {
            weights.var_weight(x)
        } else {
            Self::live_ctrs(problem, enabled, x, 2).map(|c| weights.ctr_weight(c)).sum()
        }
    }

    pub fn score(&self, problem: &Problem, enabled: &[bool], weights: &WeightStore, x: VarId) -> f64 {
        let dom = problem.domains().get(x).size() as f64;
        match self.kind {
            VarHeuristicKind::Rand => 0.0,
            VarHeuristicKind::Dom => dom,
            VarHeuristicKind::DDegOnDom => dom / (1.0 + Self::live_ctrs(problem, enabled, x, 2).count() as f64),
            VarHeuristicKind::Wdeg => Self::wdeg(problem, enabled, weights, x),
            VarHeuristicKind::WdegOnDom => {
                let w = Self::wdeg(problem, enabled, weights, x);
                if w > 0.0 {
                    dom / w
                } else {
                    f64::INFINITY
                }
            }
        }
    }

    pub fn select(
        &self,
        problem: &Problem,
        enabled: &[bool],
        weights: &WeightStore,
        rng: &mut ChaCha8Rng,
    ) -> Option<VarId> {
        let doms = problem.domains();
        let free = (0..problem.n_vars()).filter(|&x| doms.get(x).size() > 1);
        if self.kind == VarHeuristicKind::Rand {
            let free: Vec<VarId> = free.collect();
            return (!free.is_empty()).then(|| free[rng.random_range(0..free.len())]);
        }
        let flip = self.maximize() != self.anti;
        let mut best: Option<(VarId, f64)> = None;
        for x in free {
            let s = self.score(problem, enabled, weights, x);
            let s = if flip { -s } else { s };
            if best.is_none_or(|(_, b)| s < b) {
                best = Some((x, s));
            }
        }
        best.map(|(x, _)| x)
    }
}

/// Index chosen by a direct value heuristic (not BIVS).
pub fn select_value(kind: ValHeuristicKind, dom: &Domain, rng: &mut ChaCha8Rng) -> usize {
    match kind {
        ValHeuristicKind::First | ValHeuristicKind::Bivs => dom.first(),
        ValHeuristicKind::Last => dom.last(),
        ValHeuristicKind::Rand => {
            let k = rng.random_range(0..dom.size());
            dom.iter().nth(k).unwrap()
        }
    }
}

/// Index of `saved` in `dom` if still present.
pub fn saved_value(dom: &Domain, saved: i64) -> Option<usize> {
    dom.to_idx(saved).filter(|&a| dom.contains(a))
}

/// True when every variable is fixed.
pub fn all_fixed(doms: &Domains) -> bool {
    (0..doms.len()).all(|x| doms.get(x).size() == 1)
}
