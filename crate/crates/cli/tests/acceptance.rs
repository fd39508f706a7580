//! End-to-end acceptance checks, one line per criterion.

use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cpsolve::expr::{Expr, IntensionCtr, Op};
use cpsolve::gen::{brute_force, queens, random_cop, random_csp, GenParams};
use cpsolve::heuristics::{ValHeuristicKind, VarHeuristicKind, Weighting};
use cpsolve::optimization::OptStrategy;
use cpsolve::search::{luby, RestartPolicy, Restarter};
use cpsolve::tables::{CtCtr, NegativeCtr, StrCtr, Table, STAR};
use cpsolve::{Constraint, Domain, Domains, Problem, Solver, SolverOptions, Verdict};
use cpsolve_cli::{extract_core, parse_values, OptionTable};

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    ensure(start.elapsed() < limit, || format!("took {:.1?}, limit {limit:?}", start.elapsed()))
}

fn solve(p: Problem, opts: SolverOptions) -> cpsolve::Outcome {
    Solver::new(p, opts).solve()
}

fn small_params(seed: u64) -> GenParams {
    GenParams { n_ctrs: 3 + (seed % 6) as usize, ..GenParams::default() }
}

// ---------------------------------------------------------------- 1

fn configurations() -> Vec<(String, SolverOptions)> {
    // half fraction of heuristics x restarts x nogoods x LC: lc = h ^ r ^ ng
    let mut v = Vec::new();
    for h in 0..2 {
        for r in 0..2 {
            for ng in 0..2 {
                let lc = (h ^ r ^ ng) == 1;
                let mut o = SolverOptions {
                    restarts: r == 1,
                    restart_base: 2,
                    nogoods: ng == 1,
                    last_conflict: lc,
                    solution_limit: Some(1),
                    ..SolverOptions::default()
                };
                if h == 0 {
                    o.var_heuristic = VarHeuristicKind::Dom;
                } else {
                    o.var_heuristic = VarHeuristicKind::WdegOnDom;
                    o.weighting = Weighting::Chs;
                }
                v.push((format!("varh={} restarts={} ng={} lc={}", o.var_heuristic.name(), r == 1, ng == 1, lc), o));
            }
        }
    }
    v
}

fn verdicts() -> Result<String, String> {
    let start = Instant::now();
    let configs = configurations();
    let mut sat = 0;
    for seed in 0..1000 {
        let params = small_params(seed);
        let expected = !brute_force(&random_csp(&params, seed)).is_empty();
        sat += expected as usize;
        for (name, o) in &configs {
            let p = random_csp(&params, seed);
            let out = solve(p, o.clone());
            let got = match out.verdict {
                Verdict::Sat => true,
                Verdict::Unsat => false,
                v => return Err(format!("seed {seed} [{name}]: verdict {v:?}")),
            };
            ensure(got == expected, || format!("seed {seed} [{name}]: solver {got}, enumeration {expected}"))?;
            if let Some(s) = &out.solution {
                ensure(random_csp(&params, seed).is_solution(s), || format!("seed {seed} [{name}]: invalid solution"))?;
            }
        }
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("1000 instances ({sat} sat) x {} configurations, {:.1?}", configs.len(), start.elapsed()))
}

// ---------------------------------------------------------------- 2

struct TableCase {
    sizes: Vec<usize>,
    removed: Vec<(usize, usize)>,
    rows: Vec<Vec<usize>>,
}

fn table_case(rng: &mut ChaCha8Rng, starred: bool, max_arity: usize) -> TableCase {
    let arity = rng.random_range(1..=max_arity);
    let sizes: Vec<usize> = (0..arity).map(|_| rng.random_range(1..=6)).collect();
    let rows = (0..rng.random_range(0..=40))
        .map(|_| sizes.iter().map(|&s| if starred && rng.random_bool(0.15) { STAR } else { rng.random_range(0..s) }).collect())
        .collect();
    let mut removed = Vec::new();
    for (x, &s) in sizes.iter().enumerate() {
        let mut left = s;
        for a in 0..s {
            if left > 1 && rng.random_bool(0.25) {
                removed.push((x, a));
                left -= 1;
            }
        }
    }
    TableCase { sizes, removed, rows }
}

impl TableCase {
    fn domains(&self) -> Domains {
        let mut d = Domains::new(self.sizes.iter().map(|&s| Domain::range(0, s as i64 - 1).unwrap()).collect());
        d.set_level(1);
        for &(x, a) in &self.removed {
            d.remove(x, a);
        }
        d.take_changes();
        d
    }

    fn table(&self, positive: bool) -> Table {
        Table::from_indexes(self.sizes.len(), self.rows.clone(), positive).unwrap()
    }

    /// Every tuple of the full Cartesian product not in `rows`.
    fn complement(&self) -> Vec<Vec<usize>> {
        let total: usize = self.sizes.iter().product();
        (0..total)
            .map(|mut k| {
                let mut t = vec![0; self.sizes.len()];
                for p in (0..t.len()).rev() {
                    t[p] = k % self.sizes[p];
                    k /= self.sizes[p];
                }
                t
            })
            .filter(|t| !self.rows.contains(t))
            .collect()
    }

    /// The table as a predicate: `or` of `and`s of equalities, plus a
    /// trivial conjunct per variable to keep the full scope.
    fn expression(&self) -> Expr {
        let group = |op: Op, mut ch: Vec<Expr>, empty: Expr| match ch.len() {
            0 => empty,
            1 => ch.pop().unwrap(),
            _ => Expr::node(op, ch),
        };
        let x0 = || Expr::var(0);
        let truth = || Expr::node(Op::Eq, vec![x0(), x0()]);
        let falsity = || Expr::node(Op::Ne, vec![x0(), x0()]);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let eqs = r
                    .iter()
                    .enumerate()
                    .filter(|&(_, &a)| a != STAR)
                    .map(|(x, &a)| Expr::node(Op::Eq, vec![Expr::var(x), Expr::cst(a as i64)]))
                    .collect();
                group(Op::And, eqs, truth())
            })
            .collect();
        let mut all = vec![group(Op::Or, rows, falsity())];
        all.extend((0..self.sizes.len()).map(|x| Expr::node(Op::Ge, vec![Expr::var(x), Expr::cst(0)])));
        group(Op::And, all, truth())
    }
}

/// Calls the propagator until nothing changes; `None` on a wipeout.
fn fixpoint(c: &mut dyn Constraint, doms: &mut Domains) -> Option<Vec<Vec<usize>>> {
    let n = doms.len();
    let state = |d: &Domains| (0..n).map(|x| d.get(x).iter().collect::<Vec<_>>()).collect::<Vec<_>>();
    loop {
        let before = state(doms);
        for x in c.scope().to_vec() {
            if !c.run_propagator(doms, x) {
                return None;
            }
        }
        doms.take_changes();
        let after = state(doms);
        if after == before {
            return Some(after);
        }
    }
}

fn cross_equivalence() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut wiped = 0;
    for case_id in 0..500 {
        let case = table_case(&mut rng, case_id % 2 == 0, 5);
        let mut results = Vec::new();
        for name in ["STR1", "STR2", "CT", "AC3rm"] {
            let mut doms = case.domains();
            let scope: Vec<usize> = (0..case.sizes.len()).collect();
            let mut c: Box<dyn Constraint> = match name {
                "STR1" => Box::new(StrCtr::new(scope, case.table(true), &doms, false)),
                "STR2" => Box::new(StrCtr::new(scope, case.table(true), &doms, true)),
                "CT" => Box::new(CtCtr::new(scope, case.table(true), &doms)),
                _ => Box::new(IntensionCtr::new(&case.expression(), &doms)),
            };
            results.push((name, fixpoint(c.as_mut(), &mut doms)));
        }
        wiped += results[0].1.is_none() as usize;
        for (name, r) in &results[1..] {
            ensure(*r == results[0].1, || format!("positive case {case_id}: {name} {r:?} vs STR1 {:?}", results[0].1))?;
        }
    }
    for case_id in 0..200 {
        let case = table_case(&mut rng, false, 4);
        let scope: Vec<usize> = (0..case.sizes.len()).collect();
        let mut d1 = case.domains();
        let mut neg = NegativeCtr::new(scope.clone(), case.table(false), &d1);
        let got = fixpoint(&mut neg, &mut d1);
        let mut d2 = case.domains();
        let comp = Table::from_indexes(case.sizes.len(), case.complement(), true).unwrap();
        let mut str2 = StrCtr::new(scope, comp, &d2, true);
        let want = fixpoint(&mut str2, &mut d2);
        ensure(got == want, || format!("negative case {case_id}: {got:?} vs complement {want:?}"))?;
    }
    Ok(format!("500 positive tables ({wiped} wipeouts), 200 negative tables"))
}

// ---------------------------------------------------------------- 3

fn optimization() -> Result<String, String> {
    let mut unsat = 0;
    for seed in 0..500 {
        let params = GenParams { n_ctrs: 2 + (seed % 4) as usize, ..GenParams::default() };
        let p = random_cop(&params, seed);
        let c = p.objective().unwrap();
        let minimize = p.constraint(c).as_optimizable_ref().unwrap().minimize();
        let costs = brute_force(&p).iter().map(|s| p.objective_value(s).unwrap()).collect::<Vec<_>>();
        let best = if minimize { costs.iter().min() } else { costs.iter().max() }.copied();
        unsat += best.is_none() as usize;
        for strategy in [OptStrategy::Decreasing, OptStrategy::Increasing, OptStrategy::Dichotomic] {
            let out = solve(random_cop(&params, seed), SolverOptions { strategy, ..SolverOptions::default() });
            let tag = || format!("seed {seed} {strategy:?}");
            ensure(out.cost == best, || format!("{}: cost {:?}, enumeration {best:?}", tag(), out.cost))?;
            let expected = if best.is_some() { Verdict::Optimum } else { Verdict::Unsat };
            ensure(out.verdict == expected, || format!("{}: verdict {:?}", tag(), out.verdict))?;
        }
    }
    Ok(format!("500 instances ({unsat} unsat) x 3 strategies"))
}

// ---------------------------------------------------------------- 4

fn count_queens(n: usize, row: usize, cols: u32, d1: u32, d2: u32) -> u64 {
    if row == n {
        return 1;
    }
    let mut total = 0;
    for c in 0..n {
        let (a, b, e) = (1 << c, 1 << (row + c), 1 << (row + n - c));
        if cols & a == 0 && d1 & b == 0 && d2 & e == 0 {
            total += count_queens(n, row + 1, cols | a, d1 | b, d2 | e);
        }
    }
    total
}

fn queens8() -> Result<String, String> {
    let start = Instant::now();
    let first = solve(queens(8), SolverOptions::default());
    ensure(first.verdict == Verdict::Sat, || format!("verdict {:?}", first.verdict))?;
    ensure(queens(8).is_solution(first.solution.as_ref().unwrap()), || "invalid solution".into())?;
    let all = solve(queens(8), SolverOptions { solution_limit: None, ..SolverOptions::default() });
    let oracle = count_queens(8, 0, 0, 0, 0);
    ensure(oracle == 92, || format!("oracle counted {oracle}"))?;
    ensure(all.n_solutions == oracle && all.complete, || format!("counted {} (complete {})", all.n_solutions, all.complete))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("SATISFIABLE, 92 solutions, {:.1?}", start.elapsed()))
}

// ---------------------------------------------------------------- 5

fn nogood_soundness() -> Result<String, String> {
    let mut total = 0;
    let mut learned = 0;
    for seed in 0..300 {
        let params = GenParams { tightness: 0.25, ..small_params(seed) };
        let on = SolverOptions {
            nogoods: true,
            restarts: true,
            restart_base: 1,
            restart_factor: 1.0,
            solution_limit: None,
            ..SolverOptions::default()
        };
        let off = SolverOptions { nogoods: false, restarts: false, solution_limit: None, ..SolverOptions::default() };
        let a = solve(random_csp(&params, seed), on);
        let b = solve(random_csp(&params, seed), off);
        ensure(a.complete && b.complete, || format!("seed {seed}: incomplete"))?;
        ensure(a.n_solutions == b.n_solutions, || format!("seed {seed}: {} with learning, {} without", a.n_solutions, b.n_solutions))?;
        total += b.n_solutions;
        learned += a.stats.nogoods;
    }
    Ok(format!("300 instances, {total} solutions, {learned} nogoods recorded"))
}

// ---------------------------------------------------------------- 6

fn luby_oracle(i: u64) -> u64 {
    let mut k = 1;
    while (1u64 << k) - 1 < i {
        k += 1;
    }
    if i == (1u64 << k) - 1 {
        1 << (k - 1)
    } else {
        luby_oracle(i - (1u64 << (k - 1)) + 1)
    }
}

fn restart_sequences() -> Result<String, String> {
    let listed = [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8];
    let got: Vec<u64> = (1..=15).map(luby).collect();
    ensure(got == listed, || format!("luby {got:?}"))?;
    let rec: Vec<u64> = (1..=15).map(luby_oracle).collect();
    ensure(rec == listed, || format!("recurrence {rec:?}"))?;
    let r = Restarter::new(RestartPolicy::Geometric, 100, 1.1);
    let cut: Vec<u64> = (0..3).map(|i| r.cutoff(i)).collect();
    ensure(cut == [100, 110, 121], || format!("geometric {cut:?}"))?;
    Ok("luby 1..15 and geometric 100,110,121".into())
}

// ---------------------------------------------------------------- 7

fn present(d: &Domains) -> Vec<Vec<usize>> {
    (0..d.len()).map(|x| d.get(x).iter().collect()).collect()
}

fn trail_integrity() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let params = GenParams { n_vars: 9, dom: 6, n_ctrs: 9, tightness: 0.3, ..GenParams::default() };
    let mut steps = 0u64;
    let mut compared = 0u64;
    let mut instance = 0;
    while steps < 100_000 {
        let mut s = Solver::new(random_csp(&params, instance), SolverOptions::default());
        instance += 1;
        let initial = s.domains().snapshot();
        let mut consistent = s.preprocess();
        let root = s.domains().snapshot();
        let mut stack = Vec::new();
        for _ in 0..2_000 {
            steps += 1;
            let free: Vec<usize> = (0..s.problem().n_vars()).filter(|&x| s.domains().get(x).size() > 1).collect();
            let roll = rng.random_range(0..10);
            if consistent && !free.is_empty() && roll < 6 {
                let x = free[rng.random_range(0..free.len())];
                let vals: Vec<usize> = s.domains().get(x).iter().collect();
                let a = vals[rng.random_range(0..vals.len())];
                if roll < 4 {
                    stack.push((s.domains().snapshot(), present(s.domains())));
                    consistent = s.decide_positive(x, a);
                } else {
                    consistent = s.decide_negative(x, a);
                }
            } else if !stack.is_empty() && (roll % 2 == 0 || !consistent) {
                let (want, _) = stack.pop().unwrap();
                ensure(s.undo_positive(), || format!("step {steps}: nothing to undo"))?;
                ensure(s.domains().snapshot() == want, || format!("step {steps}: state differs after undo at depth {}", s.depth()))?;
                compared += 1;
                consistent = true;
            } else if !stack.is_empty() {
                let (_, mut parent) = stack.pop().unwrap();
                consistent = s.backtrack();
                if consistent {
                    // failed refutations pop further levels; the one that
                    // holds only removes values from its parent state
                    while stack.len() > s.depth() {
                        parent = stack.pop().unwrap().1;
                    }
                    let now = present(s.domains());
                    let inside = now.iter().zip(&parent).all(|(a, b)| a.iter().all(|v| b.contains(v)));
                    ensure(inside, || format!("step {steps}: state after backtrack is not within the parent state"))?;
                    compared += 1;
                } else {
                    stack.clear();
                }
            } else {
                s.reset();
                ensure(s.domains().snapshot() == initial, || format!("step {steps}: reset differs from initial state"))?;
                consistent = s.preprocess();
                ensure(s.domains().snapshot() == root, || format!("step {steps}: root propagation differs"))?;
                compared += 2;
                stack.clear();
            }
            ensure(s.depth() == stack.len(), || format!("step {steps}: depth {} for {} snapshots", s.depth(), stack.len()))?;
        }
    }
    Ok(format!("{steps} steps over {instance} instances, {compared} snapshot comparisons"))
}

// ---------------------------------------------------------------- 8

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../xcsp/tests/corpus");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir).unwrap().map(|e| e.unwrap().path()).collect();
    v.sort();
    v
}

fn run_bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cpsolve")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn cli_fidelity() -> Result<String, String> {
    let parse = |args: &[&str]| {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let (t, _) = OptionTable::parse(&args).map_err(|e| e.to_string())?;
        let o = t.solver_options().map_err(|e| e.to_string())?;
        Ok::<_, String>((t, o))
    };
    let (t, o) = parse(&["-t=10s"])?;
    ensure(t.timeout_ms().unwrap() == Some(10_000), || "-t=10s".into())?;
    ensure(o.timeout == Some(Duration::from_millis(10_000)), || format!("timeout {:?}", o.timeout))?;
    let (_, o) = parse(&["-varh=Dom"])?;
    ensure(o.var_heuristic == VarHeuristicKind::Dom, || "-varh=Dom".into())?;
    let (_, o) = parse(&["-anti_varh"])?;
    ensure(o.anti_varh, || "-anti_varh".into())?;
    let (_, o) = parse(&["-varh=WdegOnDom", "-wt=chs"])?;
    ensure(o.var_heuristic == VarHeuristicKind::WdegOnDom && o.weighting == Weighting::Chs, || "-varh=WdegOnDom -wt=chs".into())?;
    let (_, o) = parse(&["-valh=Rand"])?;
    ensure(o.val_heuristic == ValHeuristicKind::Rand, || "-valh=Rand".into())?;

    let lines: [&[&str]; 5] = [&["-t=10s"], &["-varh=Dom"], &["-anti_varh"], &["-varh=WdegOnDom", "-wt=chs"], &["-valh=Rand"]];
    let echoes = ["t=10000ms", "varh=Dom", "anti_varh=true", "varh=WdegOnDom", "valh=Rand"];
    let mut checked = 0;
    for path in corpus() {
        let file = path.to_str().unwrap();
        let doc = cpsolve_xcsp::parse_instance(&std::fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
        for (opts, echo) in lines.iter().zip(echoes) {
            let mut args = vec![file];
            args.extend_from_slice(opts);
            let (code, out) = run_bin(&args);
            let tag = || format!("{} {}", path.file_name().unwrap().to_string_lossy(), opts.join(" "));
            ensure(code == 0, || format!("{}: exit {code}", tag()))?;
            let config = out.lines().find(|l| l.starts_with("c config")).unwrap_or_default();
            ensure(config.split(' ').any(|w| w == echo), || format!("{}: config `{config}`", tag()))?;
            let costs: Vec<i64> = out.lines().filter_map(|l| l.strip_prefix("o ")).map(|v| v.trim().parse().unwrap()).collect();
            if let Some(o) = &doc.objective {
                let monotone = costs.windows(2).all(|w| if o.minimize { w[1] < w[0] } else { w[1] > w[0] });
                ensure(monotone, || format!("{}: o lines {costs:?}", tag()))?;
            }
            for v in out.lines().filter(|l| l.starts_with("v ")) {
                let values = parse_values(&doc, v).map_err(|e| format!("{}: {e}", tag()))?;
                ensure(doc.accepts(&values), || format!("{}: rejected `{v}`", tag()))?;
                if let Some(o) = &doc.objective {
                    ensure(costs.last() == Some(&o.value(&values)), || format!("{}: last o line is not the cost of `{v}`", tag()))?;
                }
                let (code, said) = run_bin(&["verify", file, v]);
                ensure(code == 0 && said.contains("c VALID"), || format!("{}: verifier said `{}`", tag(), said.trim()))?;
                checked += 1;
            }
            let unsat = out.lines().any(|l| l == "s UNSATISFIABLE");
            ensure(unsat == doc.enumerate().is_empty(), || format!("{}: status disagrees with the document", tag()))?;
        }
    }
    Ok(format!("5 command lines x {} instances, {checked} v lines verified", corpus().len()))
}

// ---------------------------------------------------------------- 9

/// Whether the constraints `ids` of `p` admit a solution, by enumeration.
fn satisfiable(p: &Problem, ids: &[usize]) -> bool {
    let doms: Vec<Vec<i64>> = (0..p.n_vars()).map(|x| p.domains().get(x).values().collect()).collect();
    let mut idx = vec![0usize; doms.len()];
    loop {
        let t: Vec<i64> = idx.iter().zip(&doms).map(|(&i, d)| d[i]).collect();
        if ids.iter().all(|&c| {
            let ctr = p.constraint(c);
            ctr.is_satisfied_by(&ctr.scope().iter().map(|&x| t[x]).collect::<Vec<_>>())
        }) {
            return true;
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return false;
            }
            idx[k] += 1;
            if idx[k] < doms[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn cores() -> Result<String, String> {
    let start = Instant::now();
    let params = GenParams { n_ctrs: 8, tightness: 0.5, ..GenParams::default() };
    let (mut found, mut seed, mut sizes) = (0, 0, 0);
    while found < 50 {
        seed += 1;
        let p = random_csp(&params, seed);
        if !brute_force(&p).is_empty() {
            continue;
        }
        found += 1;
        let core = extract_core(p, SolverOptions::default(), None).map_err(|e| format!("seed {seed}: {e}"))?;
        let p = random_csp(&params, seed);
        ensure(core.minimal, || format!("seed {seed}: flagged non-minimal"))?;
        ensure(!satisfiable(&p, &core.ctrs), || format!("seed {seed}: core {:?} is satisfiable", core.ctrs))?;
        for i in 0..core.ctrs.len() {
            let mut rest = core.ctrs.clone();
            rest.remove(i);
            ensure(satisfiable(&p, &rest), || format!("seed {seed}: core {:?} minus {} is still unsatisfiable", core.ctrs, core.ctrs[i]))?;
        }
        sizes += core.ctrs.len();
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("50 instances, mean core size {:.2}, {:.1?}", sizes as f64 / 50.0, start.elapsed()))
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 9] = [
        ("verdicts match enumeration", verdicts),
        ("table propagators cross-equivalent", cross_equivalence),
        ("optimization strategies agree", optimization),
        ("8-queens", queens8),
        ("nogood soundness", nogood_soundness),
        ("restart sequences", restart_sequences),
        ("trail integrity", trail_integrity),
        ("command-line fidelity", cli_fidelity),
        ("core extraction", cores),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let r = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail} [{:.1?}]", i + 1, start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{:.1?}]", i + 1, start.elapsed());
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
