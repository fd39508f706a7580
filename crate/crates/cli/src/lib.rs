//! Command-line front end: solving, core extraction and verification of
//! `v` lines.

pub mod extract;
pub mod options;
pub mod report;
pub mod verify;

use std::io::{Read, Write};
use std::time::Duration;

pub use extract::{extract_core, Core, CoreError};
pub use options::{parse_duration, OptionTable, UsageError, OPTIONS};
pub use report::{emit_report, value_line};
pub use verify::{parse_values, verify, VerifyError};

use cpsolve::{Problem, Solver};
use cpsolve_xcsp::{build_with, parse_instance, InstanceDoc};

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
/// `verify` on an assignment that is not a solution.
pub const EXIT_INVALID: i32 = 3;

enum Failure {
    Usage(String),
    Parse(String),
}

fn load(path: &str, table: &OptionTable) -> Result<(InstanceDoc, Problem), Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    let doc = parse_instance(&text).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    let algo = table.table_algo().map_err(|e| Failure::Usage(e.msg))?;
    let p = build_with(&doc, algo).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    Ok((doc, p))
}

/// Runs the command line `args` (without the program name).
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if args.is_empty() {
        let _ = write!(out, "{}", OptionTable::listing());
        return EXIT_OK;
    }
    let result = OptionTable::parse(args).map_err(|e| Failure::Usage(e.msg)).and_then(|(table, pos)| {
        match pos.first().map(String::as_str) {
            Some("core") => core(&table, &pos[1..], out),
            Some("verify") => verify_cmd(&pos[1..], out),
            _ => solve(&table, &pos, out),
        }
    });
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PARSE
        }
    }
}

fn one_path(pos: &[String]) -> Result<&str, Failure> {
    match pos {
        [p] => Ok(p),
        [] => Err(Failure::Usage(format!("missing instance file\n{}", OptionTable::listing()))),
        _ => Err(Failure::Usage(format!("unexpected arguments {:?}", &pos[1..]))),
    }
}

fn solve(table: &OptionTable, pos: &[String], out: &mut dyn Write) -> Result<i32, Failure> {
    let path = one_path(pos)?;
    let options = table.solver_options().map_err(|e| Failure::Usage(e.msg))?;
    let (_, p) = load(path, table)?;
    let _ = writeln!(out, "c instance {path}");
    let _ = writeln!(out, "c config {}", table.summary());
    let _ = writeln!(out, "c features {}", p.features());
    let mut s = Solver::new(p, options);
    let outcome = s.solve();
    let _ = write!(out, "{}", emit_report(s.problem(), &outcome));
    Ok(EXIT_OK)
}

fn core(table: &OptionTable, pos: &[String], out: &mut dyn Write) -> Result<i32, Failure> {
    let path = one_path(pos)?;
    let mut options = table.solver_options().map_err(|e| Failure::Usage(e.msg))?;
    // the time limit applies to the whole extraction, each check gets it too
    let budget = options.timeout;
    options.timeout = budget.map(|b| b.max(Duration::from_millis(1)));
    let (_, p) = load(path, table)?;
    let names: Vec<String> = p.variables().iter().map(|v| v.name.clone()).collect();
    let described: Vec<String> = p
        .constraints()
        .iter()
        .map(|c| format!("{} {}", c.family(), c.scope().iter().map(|&x| names[x].as_str()).collect::<Vec<_>>().join(" ")))
        .collect();
    let _ = writeln!(out, "c instance {path}");
    match extract_core(p, options, budget) {
        Ok(core) => {
            let ids: Vec<String> = core.ctrs.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "c core size {} {}", core.ctrs.len(), if core.minimal { "minimal" } else { "not minimal" });
            let _ = writeln!(out, "c core ids {}", ids.join(" "));
            for &c in &core.ctrs {
                let _ = writeln!(out, "c core ctr {c}: {}", described[c]);
            }
            let _ = writeln!(out, "c checks {}", core.checks);
            let _ = writeln!(out, "s UNSATISFIABLE");
        }
        Err(CoreError::Satisfiable) => {
            let _ = writeln!(out, "c error: instance is satisfiable");
            let _ = writeln!(out, "s SATISFIABLE");
        }
        Err(CoreError::Unknown) => {
            let _ = writeln!(out, "c error: {}", CoreError::Unknown);
            let _ = writeln!(out, "s UNKNOWN");
        }
    }
    Ok(EXIT_OK)
}

fn verify_cmd(pos: &[String], out: &mut dyn Write) -> Result<i32, Failure> {
    let (path, rest) = pos.split_first().ok_or_else(|| Failure::Usage("verify needs an instance and a v line".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    let doc = parse_instance(&text).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    let line = match rest {
        [dash] if dash == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Usage(e.to_string()))?;
            s
        }
        [] => return Err(Failure::Usage("verify needs a v line".into())),
        _ => rest.join(" "),
    };
    let res = parse_values(&doc, &line).and_then(|v| verify(&doc, &v));
    match res {
        Ok(()) => {
            let _ = writeln!(out, "c VALID");
            Ok(EXIT_OK)
        }
        Err(e) => {
            let _ = writeln!(out, "c INVALID {e}");
            Ok(EXIT_INVALID)
        }
    }
}
