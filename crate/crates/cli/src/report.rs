//! Competition-style output: `s` verdict, `o` bounds, `v` values and `c`
//! comments.

use cpsolve::{Outcome, Problem};

/// `v` line: `v x=1 y[0]=2 ...`.
pub fn value_line(p: &Problem, values: &[i64]) -> String {
    let mut s = String::from("v");
    for (v, a) in p.variables().iter().zip(values) {
        s.push(' ');
        s.push_str(&v.name);
        s.push('=');
        s.push_str(&a.to_string());
    }
    s
}

pub fn emit_report(p: &Problem, out: &Outcome) -> String {
    let mut lines = Vec::new();
    if p.is_cop() {
        lines.extend(out.bounds.iter().map(|b| format!("o {b}")));
    }
    lines.push(format!("s {}", out.verdict.text()));
    if let Some(sol) = &out.solution {
        lines.push(value_line(p, sol));
    }
    if !p.is_cop() && out.n_solutions != 1 {
        lines.push(format!("c solutions {}{}", out.n_solutions, if out.complete { "" } else { " (incomplete)" }));
    }
    lines.push(format!("c stats {}", out.stats));
    lines.join("\n") + "\n"
}
