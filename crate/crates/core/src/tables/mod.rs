//! Extension constraints: ordinary, starred and negative tables.

mod ct;
mod negative;
mod str;

use crate::constraint::Constraint;
use crate::domain::{Domain, VarId};

pub use ct::CtCtr;
pub use negative::NegativeCtr;
pub use str::StrCtr;

/// Entry of an index tuple matching any value.
pub const STAR: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("tuple of length {got} for a scope of arity {arity}")]
    Arity { arity: usize, got: usize },
    #[error("negative tables cannot contain `*`")]
    NegativeStarred,
}

/// Propagator used for positive tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TableAlgo {
    #[default]
    Ct,
    Str1,
    Str2,
}

impl TableAlgo {
    pub fn from_name(s: &str) -> Option<Self> {
        match s.to_ascii_uppercase().as_str() {
            "CT" => Some(TableAlgo::Ct),
            "STR1" => Some(TableAlgo::Str1),
            "STR2" => Some(TableAlgo::Str2),
            _ => None,
        }
    }
}

/// Index tuples stored row after row, sorted and without duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    arity: usize,
    data: Vec<usize>,
    positive: bool,
    starred: bool,
}

impl Table {
    /// Converts value tuples (`None` = `*`) to index tuples over `doms`.
    /// Tuples mentioning a value outside a universe are dropped; their
    /// number is returned along with the table.
    pub fn from_values(doms: &[&Domain], rows: &[Vec<Option<i64>>], positive: bool) -> Result<(Self, usize), TableError> {
        let mut idx_rows = Vec::with_capacity(rows.len());
        let mut dropped = 0;
        'rows: for row in rows {
            if row.len() != doms.len() {
                return Err(TableError::Arity { arity: doms.len(), got: row.len() });
            }
            let mut t = Vec::with_capacity(row.len());
            for (v, dom) in row.iter().zip(doms) {
                match v {
                    None => t.push(STAR),
                    Some(v) => match dom.to_idx(*v) {
                        Some(a) => t.push(a),
                        None => {
                            dropped += 1;
                            continue 'rows;
                        }
                    },
                }
            }
            idx_rows.push(t);
        }
        Ok((Self::from_indexes(doms.len(), idx_rows, positive)?, dropped))
    }

    pub fn from_indexes(arity: usize, mut rows: Vec<Vec<usize>>, positive: bool) -> Result<Self, TableError> {
        if let Some(r) = rows.iter().find(|r| r.len() != arity) {
            return Err(TableError::Arity { arity, got: r.len() });
        }
        rows.sort_unstable();
        rows.dedup();
        let starred = rows.iter().flatten().any(|&a| a == STAR);
        if starred && !positive {
            return Err(TableError::NegativeStarred);
        }
        Ok(Self { arity, data: rows.concat(), positive, starred })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.arity).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn tuple(&self, i: usize) -> &[usize] {
        &self.data[i * self.arity..(i + 1) * self.arity]
    }

    pub fn tuples(&self) -> impl Iterator<Item = &[usize]> + '_ {
        self.data.chunks_exact(self.arity.max(1))
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn is_starred(&self) -> bool {
        self.starred
    }

    /// Whether some tuple matches the index tuple `t` (no star in `t`).
    pub fn matches(&self, t: &[usize]) -> bool {
        if self.starred {
            self.tuples().any(|row| row.iter().zip(t).all(|(&r, &a)| r == STAR || r == a))
        } else {
            let (mut lo, mut hi) = (0, self.len());
            while lo < hi {
                let mid = (lo + hi) / 2;
                match self.tuple(mid).cmp(t) {
                    std::cmp::Ordering::Less => lo = mid + 1,
                    std::cmp::Ordering::Greater => hi = mid,
                    std::cmp::Ordering::Equal => return true,
                }
            }
            false
        }
    }
}

/// Value-level membership shared by table constraints.
#[derive(Debug, Clone)]
pub(crate) struct TableCheck {
    univ: Vec<Domain>,
}

impl TableCheck {
    pub(crate) fn new(scope: &[VarId], doms: &crate::domain::Domains) -> Self {
        Self { univ: scope.iter().map(|&x| doms.get(x).clone()).collect() }
    }

    pub(crate) fn holds(&self, table: &Table, values: &[i64]) -> bool {
        let idx: Option<Vec<usize>> = values.iter().zip(&self.univ).map(|(&v, d)| d.to_idx(v)).collect();
        match idx {
            Some(t) => table.matches(&t) == table.is_positive(),
            None => !table.is_positive(),
        }
    }
}

/// Builds the propagator for a table over `scope`.
pub fn extension(
    scope: Vec<VarId>,
    table: Table,
    algo: TableAlgo,
    doms: &crate::domain::Domains,
) -> Box<dyn Constraint> {
    if !table.is_positive() {
        return Box::new(NegativeCtr::new(scope, table, doms));
    }
    match algo {
        TableAlgo::Ct => Box::new(CtCtr::new(scope, table, doms)),
        TableAlgo::Str1 => Box::new(StrCtr::new(scope, table, doms, false)),
        TableAlgo::Str2 => Box::new(StrCtr::new(scope, table, doms, true)),
    }
}
