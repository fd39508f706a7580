//! Options in the `-name=value` style: every option has a long name and a
//! shortcut, and flags may omit the value.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::time::Duration;

use cpsolve::heuristics::{ValHeuristicKind, VarHeuristicKind, Weighting};
use cpsolve::optimization::OptStrategy;
use cpsolve::propagation::PropagationKind;
use cpsolve::search::RestartPolicy;
use cpsolve::tables::TableAlgo;
use cpsolve::SolverOptions;

/// Environment variable giving the default seed.
pub const SEED_VAR: &str = "CPSOLVE_SEED";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{msg}")]
pub struct UsageError {
    pub msg: String,
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError { msg: msg.into() }
}

#[derive(Debug, Clone, Copy)]
pub struct OptionSpec {
    pub name: &'static str,
    pub short: &'static str,
    pub default: &'static str,
    pub description: &'static str,
    pub flag: bool,
}

const fn opt(name: &'static str, short: &'static str, default: &'static str, description: &'static str) -> OptionSpec {
    OptionSpec { name, short, default, description, flag: false }
}

const fn flag(name: &'static str, short: &'static str, description: &'static str) -> OptionSpec {
    OptionSpec { name, short, default: "false", description, flag: true }
}

pub const OPTIONS: &[OptionSpec] = &[
    opt("timeout", "t", "none", "time limit, in ms or with an s suffix (10s)"),
    opt("varHeuristic", "varh", "Wdeg", "variable ordering: Rand, Dom, DDegOnDom, Wdeg, WdegOnDom"),
    flag("antiVarHeuristic", "anti_varh", "select the worst variable instead of the best"),
    opt("valHeuristic", "valh", "First", "value ordering: First, Last, Rand, Bivs"),
    opt("weighting", "wt", "cacd", "constraint weighting: var, unit, cacd, chs"),
    opt("propagation", "p", "AC", "propagation: AC or FC"),
    opt("restartsNRuns", "r_n", "none", "maximal number of runs (1 disables restarts)"),
    opt("restartsCutoff", "r_c", "100", "cutoff of the first run, in wrong decisions"),
    opt("restartsFactor", "r_f", "1.1", "geometric increase of the cutoff"),
    flag("luby", "luby", "Luby cutoffs instead of geometric ones"),
    opt("lastConflict", "lc", "1", "last-conflict reasoning (0 or 1)"),
    opt("nogoods", "ng", "1", "nogood recording from restarts (0 or 1)"),
    opt("solutions", "s", "1", "number of solutions to find, or all"),
    opt("optStrategy", "os", "decreasing", "optimization: decreasing, increasing, dichotomic"),
    opt("positive", "positive", "CT", "positive table propagator: CT, STR1, STR2"),
    opt("solutionSaving", "sos", "1", "prefer values of the last solution (0 or 1)"),
    opt("seed", "seed", "0", "random seed; CPSOLVE_SEED applies when not given"),
];

/// Milliseconds from `250` or `10s`.
pub fn parse_duration(text: &str) -> Result<u64, UsageError> {
    let bad = || usage(format!("malformed duration `{text}`"));
    match text.strip_suffix('s') {
        Some(secs) => secs.parse::<u64>().map_err(|_| bad())?.checked_mul(1000).ok_or_else(bad),
        None => text.parse().map_err(|_| bad()),
    }
}

fn parse_bool(name: &str, v: &str) -> Result<bool, UsageError> {
    match v {
        "1" | "true" | "yes" => Ok(true),
        "0" | "false" | "no" => Ok(false),
        _ => Err(usage(format!("option -{name} expects 0 or 1, got `{v}`"))),
    }
}

#[derive(Debug, Clone, Default)]
pub struct OptionTable {
    values: BTreeMap<&'static str, String>,
}

impl OptionTable {
    pub fn spec(key: &str) -> Option<&'static OptionSpec> {
        OPTIONS.iter().find(|o| o.name == key || o.short == key)
    }

    /// Every option with its shortcut, default and description.
    pub fn listing() -> String {
        let mut s = String::from("usage: cpsolve <instance.xml> [options]\n       cpsolve core <instance.xml> [options]\n       cpsolve verify <instance.xml> <v line | ->\noptions:\n");
        for o in OPTIONS {
            let form = if o.flag { format!("-{}", o.short) } else { format!("-{}=", o.short) };
            writeln!(s, "  {form:<16} {:<18} {} (default {})", o.name, o.description, o.default).unwrap();
        }
        s
    }

    /// Splits options from positional arguments.
    pub fn parse(args: &[String]) -> Result<(Self, Vec<String>), UsageError> {
        let mut t = Self::default();
        let mut positional = Vec::new();
        for a in args {
            let Some(body) = a.strip_prefix('-').filter(|b| !b.is_empty() && !b.starts_with(|c: char| c.is_ascii_digit())) else {
                positional.push(a.clone());
                continue;
            };
            let (key, value) = match body.split_once('=') {
                Some((k, v)) => (k, Some(v)),
                None => (body, None),
            };
            let spec = Self::spec(key).ok_or_else(|| usage(format!("unknown option -{key}\n{}", Self::listing())))?;
            let value = match (value, spec.flag) {
                (Some(v), _) => v.to_string(),
                (None, true) => "true".to_string(),
                (None, false) => return Err(usage(format!("option -{key} needs a value (-{key}=...)"))),
            };
            t.values.insert(spec.name, value);
        }
        Ok((t, positional))
    }

    /// Value of an option given by long name, or its default.
    pub fn get(&self, name: &str) -> String {
        if let Some(v) = self.values.get(name) {
            return v.clone();
        }
        if name == "seed" {
            if let Ok(v) = std::env::var(SEED_VAR) {
                return v;
            }
        }
        Self::spec(name).expect("registered option").default.to_string()
    }

    pub fn is_set(&self, name: &str) -> bool {
        self.values.contains_key(name)
    }

    pub fn timeout_ms(&self) -> Result<Option<u64>, UsageError> {
        match self.get("timeout").as_str() {
            "none" => Ok(None),
            t => parse_duration(t).map(Some),
        }
    }

    pub fn table_algo(&self) -> Result<TableAlgo, UsageError> {
        let v = self.get("positive");
        TableAlgo::from_name(&v).ok_or_else(|| usage(format!("unknown table propagator `{v}`")))
    }

    pub fn solver_options(&self) -> Result<SolverOptions, UsageError> {
        let num = |name: &str| -> Result<Option<u64>, UsageError> {
            match self.get(name).as_str() {
                "none" | "all" => Ok(None),
                v => v.parse().map(Some).map_err(|_| usage(format!("option -{name} expects an integer, got `{v}`"))),
            }
        };
        let named = |name: &str, ok: Option<()>| ok.ok_or_else(|| usage(format!("unknown value `{}` for -{name}", self.get(name))));
        let varh = VarHeuristicKind::from_name(&self.get("varHeuristic"));
        named("varHeuristic", varh.map(|_| ()))?;
        let valh = ValHeuristicKind::from_name(&self.get("valHeuristic"));
        named("valHeuristic", valh.map(|_| ()))?;
        let wt = Weighting::from_name(&self.get("weighting"));
        named("weighting", wt.map(|_| ()))?;
        let p = PropagationKind::from_name(&self.get("propagation"));
        named("propagation", p.map(|_| ()))?;
        let os = OptStrategy::from_name(&self.get("optStrategy"));
        named("optStrategy", os.map(|_| ()))?;
        let factor: f64 = self.get("restartsFactor").parse().map_err(|_| usage("option -r_f expects a number"))?;
        if factor.is_nan() || factor < 1.0 {
            return Err(usage("option -r_f must be at least 1"));
        }
        let base = num("restartsCutoff")?.ok_or_else(|| usage("option -r_c expects an integer"))?;
        let seed = self.get("seed").parse().map_err(|_| usage(format!("malformed seed `{}`", self.get("seed"))))?;
        let max_runs = num("restartsNRuns")?;
        if max_runs == Some(0) {
            return Err(usage("option -r_n must be positive"));
        }
        Ok(SolverOptions {
            var_heuristic: varh.unwrap(),
            anti_varh: parse_bool("anti_varh", &self.get("antiVarHeuristic"))?,
            weighting: wt.unwrap(),
            val_heuristic: valh.unwrap(),
            solution_saving: parse_bool("sos", &self.get("solutionSaving"))?,
            propagation: p.unwrap(),
            restarts: max_runs != Some(1),
            restart_policy: if parse_bool("luby", &self.get("luby"))? { RestartPolicy::Luby } else { RestartPolicy::Geometric },
            restart_base: base.max(1),
            restart_factor: factor,
            max_runs,
            last_conflict: parse_bool("lc", &self.get("lastConflict"))?,
            nogoods: parse_bool("ng", &self.get("nogoods"))?,
            solution_limit: num("solutions")?,
            strategy: os.unwrap(),
            timeout: self.timeout_ms()?.map(Duration::from_millis),
            seed,
            ..SolverOptions::default()
        })
    }

    /// One-line echo of the effective configuration.
    pub fn summary(&self) -> String {
        let keys = [
            ("t", "timeout"),
            ("varh", "varHeuristic"),
            ("anti_varh", "antiVarHeuristic"),
            ("valh", "valHeuristic"),
            ("wt", "weighting"),
            ("p", "propagation"),
            ("r_n", "restartsNRuns"),
            ("r_c", "restartsCutoff"),
            ("r_f", "restartsFactor"),
            ("luby", "luby"),
            ("lc", "lastConflict"),
            ("ng", "nogoods"),
            ("s", "solutions"),
            ("os", "optStrategy"),
            ("positive", "positive"),
            ("seed", "seed"),
        ];
        let parts: Vec<String> = keys
            .iter()
            .map(|(short, name)| match (*name, self.timeout_ms()) {
                ("timeout", Ok(Some(ms))) => format!("{short}={ms}ms"),
                _ => format!("{short}={}", self.get(name)),
            })
            .collect();
        parts.join(" ")
    }
}
