use crate::constraint::{CmpOp, Constraint, Tags};
use crate::domain::{Domains, VarId};

/// `Σ coeffs[i]·scope[i] op k`. A variable operand is moved into the terms
/// with coefficient -1 by the model builder.
#[derive(Debug, Clone)]
pub struct SumCtr {
    scope: Vec<VarId>,
    coeffs: Vec<i64>,
    op: CmpOp,
    k: i64,
}

fn div_floor(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -div_floor(-a, b)
}

fn clamp(v: i128) -> i64 {
    v.clamp(i64::MIN as i128, i64::MAX as i128) as i64
}

/// Bounds of `Σ coeffs[i]·scope[i]` over the current domains.
pub fn sum_bounds(scope: &[VarId], coeffs: &[i64], doms: &Domains) -> (i128, i128) {
    let (mut lo, mut hi) = (0i128, 0i128);
    for (&x, &c) in scope.iter().zip(coeffs) {
        let (a, b) = (c as i128 * doms.get(x).min_value() as i128, c as i128 * doms.get(x).max_value() as i128);
        lo += a.min(b);
        hi += a.max(b);
    }
    (lo, hi)
}

/// Enforces `Σ terms ≤ k` on bounds; `changed` is set when a domain shrinks.
fn filter_le(scope: &[VarId], coeffs: &[i64], k: i128, doms: &mut Domains, changed: &mut bool) -> bool {
    let (lo, _) = sum_bounds(scope, coeffs, doms);
    if lo > k {
        return false;
    }
    for (&x, &c) in scope.iter().zip(coeffs) {
        let dom = doms.get(x);
        let c = c as i128;
        let own = (c * dom.min_value() as i128).min(c * dom.max_value() as i128);
        let slack = k - (lo - own);
        let before = dom.size();
        let ok = if c > 0 {
            doms.remove_above(x, clamp(div_floor(slack, c)))
        } else {
            doms.remove_below(x, clamp(div_ceil(slack, c)))
        };
        if !ok {
            return false;
        }
        if doms.get(x).size() != before {
            *changed = true;
        }
    }
    true
}

impl SumCtr {
    pub fn new(scope: Vec<VarId>, coeffs: Vec<i64>, op: CmpOp, k: i64) -> Self {
        assert_eq!(scope.len(), coeffs.len());
        assert!(coeffs.iter().all(|&c| c != 0), "null coefficient");
        Self { scope, coeffs, op, k }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn op(&self) -> CmpOp {
        self.op
    }

    pub fn limit(&self) -> i64 {
        self.k
    }

    /// Changes the right-hand side (used by objectives).
    pub(crate) fn set_limit(&mut self, op: CmpOp, k: i64) {
        self.op = op;
        self.k = k;
    }

    fn neg_coeffs(&self) -> Vec<i64> {
        self.coeffs.iter().map(|c| -c).collect()
    }

    /// Filtering for the current `op` and `k`.
    pub(crate) fn filter(&self, doms: &mut Domains) -> bool {
        let k = self.k as i128;
        let neg = self.neg_coeffs();
        loop {
            let mut changed = false;
            let ok = match self.op {
                CmpOp::Le => filter_le(&self.scope, &self.coeffs, k, doms, &mut changed),
                CmpOp::Lt => filter_le(&self.scope, &self.coeffs, k - 1, doms, &mut changed),
                CmpOp::Ge => filter_le(&self.scope, &neg, -k, doms, &mut changed),
                CmpOp::Gt => filter_le(&self.scope, &neg, -k - 1, doms, &mut changed),
                CmpOp::Eq => {
                    filter_le(&self.scope, &self.coeffs, k, doms, &mut changed)
                        && filter_le(&self.scope, &neg, -k, doms, &mut changed)
                }
                CmpOp::Ne => return self.filter_ne(doms),
            };
            if !ok {
                return false;
            }
            if !changed {
                return true;
            }
        }
    }

    fn filter_ne(&self, doms: &mut Domains) -> bool {
        let mut free = None;
        let mut rest = 0i128;
        for (i, (&x, &c)) in self.scope.iter().zip(&self.coeffs).enumerate() {
            match doms.get(x).single_value() {
                Some(v) => rest += c as i128 * v as i128,
                None if free.is_none() => free = Some(i),
                None => return true,
            }
        }
        match free {
            None => rest != self.k as i128,
            Some(i) => {
                let (x, c) = (self.scope[i], self.coeffs[i] as i128);
                let target = self.k as i128 - rest;
                if target % c == 0 {
                    doms.remove_value(x, clamp(target / c))
                } else {
                    true
                }
            }
        }
    }
}

impl Constraint for SumCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "sum"
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        let s: i128 = values.iter().zip(&self.coeffs).map(|(&v, &c)| v as i128 * c as i128).sum();
        match self.op {
            CmpOp::Lt => s < self.k as i128,
            CmpOp::Le => s <= self.k as i128,
            CmpOp::Ge => s >= self.k as i128,
            CmpOp::Gt => s > self.k as i128,
            CmpOp::Eq => s == self.k as i128,
            CmpOp::Ne => s != self.k as i128,
        }
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        self.filter(doms)
    }
}
