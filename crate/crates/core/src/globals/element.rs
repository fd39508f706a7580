use super::Operand;
use crate::constraint::{has_duplicates, Constraint, Tags};
use crate::domain::{Domains, VarId};

/// `list[index - start] = value`.
#[derive(Debug, Clone)]
pub struct ElementCtr {
    scope: Vec<VarId>,
    n_list: usize,
    index: VarId,
    start: i64,
    value: Operand,
    exact: bool,
}

impl ElementCtr {
    pub fn new(list: Vec<VarId>, start: i64, index: VarId, value: Operand) -> Self {
        let n_list = list.len();
        let mut scope = list;
        scope.push(index);
        if let Operand::Var(v) = value {
            scope.push(v);
        }
        Self { exact: !has_duplicates(&scope), scope, n_list, index, start, value }
    }

    fn position(&self, i: i64) -> Option<usize> {
        let p = i.checked_sub(self.start)?;
        (0..self.n_list as i64).contains(&p).then_some(p as usize)
    }

    fn value_possible(&self, doms: &Domains, v: i64) -> bool {
        match self.value {
            Operand::Const(k) => k == v,
            Operand::Var(z) => doms.get(z).contains_value(v),
        }
    }
}

impl Constraint for ElementCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "element"
    }

    fn tags(&self) -> Tags {
        let strength = if self.exact { Tags::AC } else { Tags::NOT_AC };
        strength | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        let v = match self.value {
            Operand::Const(k) => k,
            Operand::Var(_) => values[self.n_list + 1],
        };
        self.position(values[self.n_list]).is_some_and(|p| values[p] == v)
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        loop {
            let before = doms.removals();
            // index keeps i iff list[i] and value intersect
            let keep: Vec<bool> = (0..doms.get(self.index).initial_size())
                .map(|a| {
                    let i = doms.get(self.index).to_val(a);
                    self.position(i).is_some_and(|p| doms.get(self.scope[p]).values().any(|v| self.value_possible(doms, v)))
                })
                .collect();
            if !doms.retain(self.index, |a, _| keep[a]) {
                return false;
            }
            if let Operand::Var(z) = self.value {
                let positions: Vec<usize> = doms.get(self.index).values().filter_map(|i| self.position(i)).collect();
                let list = &self.scope;
                let keep: Vec<bool> = (0..doms.get(z).initial_size())
                    .map(|b| {
                        let v = doms.get(z).to_val(b);
                        positions.iter().any(|&p| doms.get(list[p]).contains_value(v))
                    })
                    .collect();
                if !doms.retain(z, |b, _| keep[b]) {
                    return false;
                }
            }
            if let Some(i) = doms.get(self.index).single_value() {
                let p = self.position(i).unwrap();
                let x = self.scope[p];
                let ok = match self.value {
                    Operand::Const(k) => doms.reduce_to_value(x, k),
                    Operand::Var(z) => {
                        let keep: Vec<bool> = (0..doms.get(x).initial_size())
                            .map(|a| doms.get(z).contains_value(doms.get(x).to_val(a)))
                            .collect();
                        doms.retain(x, |a, _| keep[a])
                    }
                };
                if !ok {
                    return false;
                }
            }
            if doms.removals() == before {
                return true;
            }
        }
    }
}

/// `x[i] = j <=> y[j] = i`; with a single list, `x[i] = j <=> x[j] = i`.
/// Indexes are 0-based.
#[derive(Debug, Clone)]
pub struct ChannelCtr {
    scope: Vec<VarId>,
    n_x: usize,
    single: bool,
}

impl ChannelCtr {
    pub fn new(x: Vec<VarId>, y: Option<Vec<VarId>>) -> Self {
        match y {
            None => Self { n_x: x.len(), scope: x, single: true },
            Some(y) => {
                assert_eq!(x.len(), y.len(), "channel lists must have the same length");
                let n_x = x.len();
                let mut scope = x;
                scope.extend(y);
                Self { scope, n_x, single: false }
            }
        }
    }

    fn xs(&self) -> &[VarId] {
        &self.scope[..self.n_x]
    }

    fn ys(&self) -> &[VarId] {
        if self.single {
            &self.scope
        } else {
            &self.scope[self.n_x..]
        }
    }

    /// Removes `j` from `a[i]` unless `b[j]` can take `i`.
    fn revise(doms: &mut Domains, a: &[VarId], b: &[VarId]) -> bool {
        for (i, &x) in a.iter().enumerate() {
            let keep: Vec<bool> = (0..doms.get(x).initial_size())
                .map(|k| {
                    let j = doms.get(x).to_val(k);
                    usize::try_from(j).ok().filter(|&j| j < b.len()).is_some_and(|j| doms.get(b[j]).contains_value(i as i64))
                })
                .collect();
            if !doms.retain(x, |k, _| keep[k]) {
                return false;
            }
        }
        true
    }
}

impl Constraint for ChannelCtr {
    fn scope(&self) -> &[VarId] {
        &self.scope
    }

    fn family(&self) -> &'static str {
        "channel"
    }

    fn tags(&self) -> Tags {
        Tags::NOT_AC | Tags::CALL_COMPLETE_FILTERING
    }

    fn is_satisfied_by(&self, values: &[i64]) -> bool {
        let (xv, yv) = if self.single { (values, values) } else { values.split_at(self.n_x) };
        let ok = |a: &[i64], b: &[i64]| {
            a.iter().enumerate().all(|(i, &j)| usize::try_from(j).ok().and_then(|j| b.get(j)) == Some(&(i as i64)))
        };
        ok(xv, yv) && ok(yv, xv)
    }

    fn run_propagator(&mut self, doms: &mut Domains, _evt: VarId) -> bool {
        let (xs, ys) = (self.xs().to_vec(), self.ys().to_vec());
        loop {
            let before = doms.removals();
            if !Self::revise(doms, &xs, &ys) || (!self.single && !Self::revise(doms, &ys, &xs)) {
                return false;
            }
            if doms.removals() == before {
                return true;
            }
        }
    }
}
