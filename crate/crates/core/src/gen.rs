//! Seeded random instances, a brute-force enumerator and a few classic models.

use rand::seq::index::sample;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::constraint::{CmpOp, Constraint};
use crate::domain::{Domain, Domains, VarId};
use crate::expr::{Expr, Op};
use crate::globals::{
    AllDifferentCtr, AllEqualCtr, Condition, CountCtr, ElementCtr, LexCtr, MinMaxCtr, NValuesCtr, Operand, OrderedCtr,
    PrecedenceCtr, SumCtr,
};
use crate::model::{all_different, intension};
use crate::optimization::{ObjectiveCtr, ObjectiveKind};
use crate::problem::Problem;
use crate::tables::{extension, Table, TableAlgo};

#[derive(Debug, Clone)]
pub struct GenParams {
    pub n_vars: usize,
    /// Largest domain size.
    pub dom: usize,
    pub n_ctrs: usize,
    /// Probability for a tuple to be a conflict.
    pub tightness: f64,
    /// Mix tables, intension and global constraints; tables only otherwise.
    pub mixed: bool,
    /// Table algorithm; random when `None`.
    pub algo: Option<TableAlgo>,
}

impl Default for GenParams {
    fn default() -> Self {
        Self { n_vars: 5, dom: 5, n_ctrs: 6, tightness: 0.4, mixed: true, algo: None }
    }
}

const OPS: [CmpOp; 6] = [CmpOp::Lt, CmpOp::Le, CmpOp::Ge, CmpOp::Gt, CmpOp::Eq, CmpOp::Ne];

fn random_domain(rng: &mut ChaCha8Rng, dom: usize) -> Domain {
    if rng.random_bool(0.8) {
        Domain::range(0, dom as i64 - 1).unwrap()
    } else {
        let size = rng.random_range(1..=dom);
        let mut vals: Vec<i64> = sample(rng, dom + 2, size).into_iter().map(|v| v as i64 - 1).collect();
        vals.sort_unstable();
        Domain::from_values(&vals).unwrap()
    }
}

/// All tuples of values over the current domains of `scope`.
fn product(doms: &Domains, scope: &[VarId]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &x in scope {
        out = out
            .into_iter()
            .flat_map(|t| {
                doms.get(x).values().map(move |v| {
                    let mut t = t.clone();
                    t.push(v);
                    t
                })
            })
            .collect();
    }
    out
}

fn scope(rng: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize) -> Vec<VarId> {
    let k = rng.random_range(lo.min(n)..=hi.min(n));
    sample(rng, n, k).into_vec()
}

fn table_ctr(rng: &mut ChaCha8Rng, p: &Problem, params: &GenParams, positive: bool) -> Box<dyn Constraint> {
    let sc = scope(rng, p.n_vars(), 2, 3);
    let doms = p.domains();
    let mut rows: Vec<Vec<Option<i64>>> = product(doms, &sc)
        .into_iter()
        .filter(|_| rng.random_bool(if positive { 1.0 - params.tightness } else { params.tightness }))
        .map(|t| t.into_iter().map(Some).collect())
        .collect();
    if positive && rng.random_bool(0.2) {
        for r in rows.iter_mut() {
            if rng.random_bool(0.15) {
                let i = rng.random_range(0..r.len());
                r[i] = None;
            }
        }
    }
    let refs: Vec<&Domain> = sc.iter().map(|&x| doms.get(x)).collect();
    let (table, _) = Table::from_values(&refs, &rows, positive).unwrap();
    let algo = params.algo.unwrap_or_else(|| [TableAlgo::Ct, TableAlgo::Str1, TableAlgo::Str2][rng.random_range(0..3)]);
    extension(sc, table, algo, doms)
}

fn intension_ctr(rng: &mut ChaCha8Rng, p: &Problem) -> Box<dyn Constraint> {
    let n = p.n_vars();
    let sc = scope(rng, n, 2, 3);
    let v = |i: usize| Expr::var(sc[i % sc.len()]);
    let k = rng.random_range(-1..=3);
    let op = OPS[rng.random_range(0..6)];
    let cmp = |op: CmpOp| match op {
        CmpOp::Lt => Op::Lt,
        CmpOp::Le => Op::Le,
        CmpOp::Ge => Op::Ge,
        CmpOp::Gt => Op::Gt,
        CmpOp::Eq => Op::Eq,
        CmpOp::Ne => Op::Ne,
    };
    let e = match rng.random_range(0..4) {
        0 => Expr::node(cmp(op), vec![Expr::node(Op::Add, vec![v(0), Expr::cst(k)]), v(1)]),
        1 => Expr::node(Op::Ne, vec![Expr::node(Op::Dist, vec![v(0), v(1)]), Expr::cst(k.abs())]),
        2 => Expr::node(cmp(op), vec![Expr::node(Op::Add, vec![Expr::node(Op::Mul, vec![v(0), v(1)]), v(2)]), Expr::cst(k + 2)]),
        _ => Expr::node(
            Op::Or,
            vec![Expr::node(Op::Eq, vec![v(0), Expr::cst(k)]), Expr::node(cmp(op), vec![v(1), v(2)])],
        ),
    };
    intension(&e, p.domains())
}

fn global_ctr(rng: &mut ChaCha8Rng, p: &Problem, dom: usize) -> Box<dyn Constraint> {
    let n = p.n_vars();
    let op = OPS[rng.random_range(0..6)];
    let d = dom as i64;
    match rng.random_range(0..9) {
        0 => Box::new(AllDifferentCtr::new(scope(rng, n, 2, 4))),
        1 => {
            let sc = scope(rng, n, 2, 4);
            let coeffs: Vec<i64> = sc.iter().map(|_| [-2, -1, 1, 2][rng.random_range(0..4)]).collect();
            let k = rng.random_range(-d..=2 * d);
            Box::new(SumCtr::new(sc, coeffs, op, k))
        }
        2 => {
            let sc = scope(rng, n, 2, 4);
            let k = rng.random_range(0..=sc.len() as i64);
            Box::new(CountCtr::new(sc, vec![rng.random_range(0..d)], op, k))
        }
        3 => {
            let sc = scope(rng, n, 2, 4);
            let k = rng.random_range(1..=sc.len() as i64);
            Box::new(NValuesCtr::new(sc, op, k))
        }
        4 => {
            let sc = scope(rng, n, 2, 4);
            let k = rng.random_range(0..d);
            Box::new(MinMaxCtr::new(sc, rng.random_bool(0.5), Condition::cst(op, k)))
        }
        5 if n >= 3 => {
            let sc = scope(rng, n, 3, 4);
            let (list, rest) = sc.split_at(sc.len() - 1 - usize::from(sc.len() > 3));
            let value = if rest.len() > 1 { Operand::Var(rest[1]) } else { Operand::Const(rng.random_range(0..d)) };
            Box::new(ElementCtr::new(list.to_vec(), 0, rest[0], value))
        }
        6 => {
            let op = [CmpOp::Lt, CmpOp::Le, CmpOp::Ge, CmpOp::Gt][rng.random_range(0..4)];
            Box::new(OrderedCtr::new(scope(rng, n, 2, 3), op))
        }
        7 if n >= 4 => {
            let sc = scope(rng, n, 4, 4);
            let op = [CmpOp::Lt, CmpOp::Le, CmpOp::Ge, CmpOp::Gt][rng.random_range(0..4)];
            Box::new(LexCtr::new(&[sc[..2].to_vec(), sc[2..].to_vec()], op))
        }
        8 => Box::new(PrecedenceCtr::new(scope(rng, n, 2, 4), vec![0, 1])),
        _ => Box::new(AllEqualCtr::new(scope(rng, n, 2, 2))),
    }
}

/// Random CSP; identical seeds give identical problems.
pub fn random_csp(params: &GenParams, seed: u64) -> Problem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Problem::new();
    for i in 0..params.n_vars {
        let d = random_domain(&mut rng, params.dom);
        p.add_variable(format!("x{i}"), d);
    }
    if params.n_vars < 2 {
        return p;
    }
    for _ in 0..params.n_ctrs {
        let c = if !params.mixed {
            table_ctr(&mut rng, &p, params, true)
        } else {
            match rng.random_range(0..10) {
                0..=2 => table_ctr(&mut rng, &p, params, true),
                3 => table_ctr(&mut rng, &p, params, false),
                4..=6 => intension_ctr(&mut rng, &p),
                _ => global_ctr(&mut rng, &p, params.dom),
            }
        };
        p.add_constraint(c);
    }
    p
}

/// Random COP: a random CSP plus an objective over a variable, a sum, a
/// minimum, a maximum or a number of distinct values.
pub fn random_cop(params: &GenParams, seed: u64) -> Problem {
    let mut p = random_csp(params, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = p.n_vars();
    let sc = scope(&mut rng, n, 2, 4);
    let kind = match rng.random_range(0..5) {
        0 => ObjectiveKind::Var(rng.random_range(0..n)),
        1 => ObjectiveKind::Sum { coeffs: sc.iter().map(|_| [-3, -2, -1, 1, 2, 3][rng.random_range(0..6)]).collect(), scope: sc },
        2 => ObjectiveKind::Minimum(sc),
        3 => ObjectiveKind::Maximum(sc),
        _ => ObjectiveKind::NValues(sc),
    };
    p.set_objective(Box::new(ObjectiveCtr::new(kind, rng.random_bool(0.5))));
    p
}

/// Every solution (values) over the current domains, in lexicographic order.
/// The objective is ignored.
pub fn brute_force(p: &Problem) -> Vec<Vec<i64>> {
    let all: Vec<VarId> = (0..p.n_vars()).collect();
    product(p.domains(), &all).into_iter().filter(|t| p.violated_by(t).is_empty()).collect()
}

/// n-queens with one variable per column and three allDifferent over
/// expressions: `q[i]`, `q[i] + i` and `q[i] - i`.
pub fn queens(n: usize) -> Problem {
    let mut p = Problem::new();
    let q: Vec<VarId> = (0..n).map(|i| p.add_variable(format!("q[{i}]"), Domain::range(0, n as i64 - 1).unwrap())).collect();
    let plain: Vec<Expr> = q.iter().map(|&x| Expr::var(x)).collect();
    let up: Vec<Expr> = q.iter().enumerate().map(|(i, &x)| Expr::node(Op::Add, vec![Expr::var(x), Expr::cst(i as i64)])).collect();
    let down: Vec<Expr> = q.iter().enumerate().map(|(i, &x)| Expr::node(Op::Sub, vec![Expr::var(x), Expr::cst(i as i64)])).collect();
    for exprs in [plain, up, down] {
        for c in all_different(&exprs, p.domains()) {
            p.add_constraint(c);
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let params = GenParams::default();
        for seed in 0..20 {
            assert_eq!(random_csp(&params, seed).features(), random_csp(&params, seed).features());
            assert_eq!(brute_force(&random_csp(&params, seed)), brute_force(&random_csp(&params, seed)));
        }
    }

    #[test]
    fn mixes_families() {
        let params = GenParams { n_ctrs: 20, ..GenParams::default() };
        let mut families = std::collections::BTreeSet::new();
        for seed in 0..50 {
            families.extend(random_csp(&params, seed).features().families.into_keys());
        }
        for f in ["extension", "intension", "allDifferent", "sum", "count", "nValues", "element", "ordered", "lex"] {
            assert!(families.contains(f), "{f} never generated: {families:?}");
        }
    }

    // classical counts for small boards
    #[test]
    fn queens_counts() {
        for (n, count) in [(4, 2), (5, 10), (6, 4)] {
            assert_eq!(brute_force(&queens(n)).len(), count);
        }
    }
}
