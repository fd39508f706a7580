//! The constraint network: variables, domains, constraints and objective.

use std::collections::BTreeMap;
use std::fmt;

use crate::constraint::{Constraint, CtrId};
use crate::domain::{Domain, Domains, VarId};

#[derive(Debug, Clone)]
pub struct Variable {
    pub id: VarId,
    pub name: String,
    pub(crate) ctrs: Vec<CtrId>,
}

impl Variable {
    /// Constraints involving this variable.
    pub fn constraints(&self) -> &[CtrId] {
        &self.ctrs
    }
}

/// Summary information about a problem instance.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Features {
    pub n_vars: usize,
    pub n_ctrs: usize,
    pub min_dom_size: usize,
    pub max_dom_size: usize,
    pub sum_dom_sizes: usize,
    pub max_arity: usize,
    pub families: BTreeMap<&'static str, usize>,
    pub objective: Option<&'static str>,
    pub dropped_tuples: usize,
}

impl fmt::Display for Features {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "vars={} ctrs={} doms=[{}..{}] arity<={}",
            self.n_vars, self.n_ctrs, self.min_dom_size, self.max_dom_size, self.max_arity
        )?;
        for (family, n) in &self.families {
            write!(f, " {family}={n}")?;
        }
        if let Some(obj) = self.objective {
            write!(f, " objective={obj}")?;
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct Problem {
    pub(crate) vars: Vec<Variable>,
    pub(crate) doms: Domains,
    pub(crate) ctrs: Vec<Box<dyn Constraint>>,
    pub(crate) objective: Option<CtrId>,
    pub(crate) dropped_tuples: usize,
}

impl Default for Problem {
    fn default() -> Self {
        Self::new()
    }
}

impl Problem {
    pub fn new() -> Self {
        Self { vars: Vec::new(), doms: Domains::new(Vec::new()), ctrs: Vec::new(), objective: None, dropped_tuples: 0 }
    }

    pub fn add_variable(&mut self, name: impl Into<String>, dom: Domain) -> VarId {
        let id = self.doms.push(dom);
        self.vars.push(Variable { id, name: name.into(), ctrs: Vec::new() });
        id
    }

    pub fn add_constraint(&mut self, ctr: Box<dyn Constraint>) -> CtrId {
        let id = self.ctrs.len();
        for &x in ctr.scope() {
            assert!(x < self.vars.len(), "constraint refers to unknown variable {x}");
            if self.vars[x].ctrs.last() != Some(&id) && !self.vars[x].ctrs.contains(&id) {
                self.vars[x].ctrs.push(id);
            }
        }
        self.ctrs.push(ctr);
        id
    }

    /// Registers the objective; the constraint must be optimizable.
    pub fn set_objective(&mut self, mut ctr: Box<dyn Constraint>) -> CtrId {
        assert!(ctr.as_optimizable().is_some(), "objective constraint must be optimizable");
        let id = self.add_constraint(ctr);
        self.objective = Some(id);
        id
    }

    pub fn n_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn n_ctrs(&self) -> usize {
        self.ctrs.len()
    }

    pub fn variables(&self) -> &[Variable] {
        &self.vars
    }

    pub fn variable(&self, x: VarId) -> &Variable {
        &self.vars[x]
    }

    pub fn var_by_name(&self, name: &str) -> Option<VarId> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn domains(&self) -> &Domains {
        &self.doms
    }

    pub fn constraints(&self) -> &[Box<dyn Constraint>] {
        &self.ctrs
    }

    pub fn constraint(&self, c: CtrId) -> &dyn Constraint {
        self.ctrs[c].as_ref()
    }

    pub fn objective(&self) -> Option<CtrId> {
        self.objective
    }

    pub fn is_cop(&self) -> bool {
        self.objective.is_some()
    }

    pub fn note_dropped_tuples(&mut self, n: usize) {
        self.dropped_tuples += n;
    }

    /// Constraints (objective excluded) violated by a full instantiation.
    pub fn violated_by(&self, values: &[i64]) -> Vec<CtrId> {
        let mut buf = Vec::new();
        (0..self.ctrs.len())
            .filter(|&c| Some(c) != self.objective)
            .filter(|&c| {
                buf.clear();
                buf.extend(self.ctrs[c].scope().iter().map(|&x| values[x]));
                !self.ctrs[c].is_satisfied_by(&buf)
            })
            .collect()
    }

    /// Whether `values` lies in the initial domains and satisfies every constraint.
    pub fn is_solution(&self, values: &[i64]) -> bool {
        values.len() == self.n_vars()
            && values.iter().enumerate().all(|(x, &v)| self.doms.get(x).to_idx(v).is_some())
            && self.violated_by(values).is_empty()
    }

    /// Objective value of a full instantiation.
    pub fn objective_value(&self, values: &[i64]) -> Option<i64> {
        let c = self.objective?;
        let ctr = &self.ctrs[c];
        let vals: Vec<i64> = ctr.scope().iter().map(|&x| values[x]).collect();
        ctr.as_optimizable_ref().map(|o| o.objective_value(&vals))
    }

    pub fn features(&self) -> Features {
        let sizes = (0..self.n_vars()).map(|x| self.doms.get(x).initial_size());
        let mut families = BTreeMap::new();
        for (c, ctr) in self.ctrs.iter().enumerate() {
            if Some(c) != self.objective {
                *families.entry(ctr.family()).or_insert(0) += 1;
            }
        }
        Features {
            n_vars: self.n_vars(),
            n_ctrs: self.n_ctrs() - usize::from(self.objective.is_some()),
            min_dom_size: sizes.clone().min().unwrap_or(0),
            max_dom_size: sizes.clone().max().unwrap_or(0),
            sum_dom_sizes: sizes.sum(),
            max_arity: self
                .ctrs
                .iter()
                .enumerate()
                .filter(|&(c, _)| Some(c) != self.objective)
                .map(|(_, c)| c.scope().len())
                .max()
                .unwrap_or(0),
            families,
            objective: self.objective.map(|c| self.ctrs[c].family()),
            dropped_tuples: self.dropped_tuples,
        }
    }
}
