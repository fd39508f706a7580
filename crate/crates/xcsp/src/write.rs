//! Writer for the supported subset. Arrays are kept, constraints are
//! written one by one with cell references.

use std::fmt::Write;

use cpsolve::globals::{Condition, Operand};
use cpsolve::optimization::ObjectiveKind;
use cpsolve::VarId;

use crate::doc::{CtrDoc, InstanceDoc};

/// `0..3 7 9..10`: runs of three values or more become intervals.
pub fn domain_text(values: &[i64]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < values.len() {
        let mut j = i;
        while j + 1 < values.len() && values[j + 1] == values[j] + 1 {
            j += 1;
        }
        if j >= i + 2 {
            parts.push(format!("{}..{}", values[i], values[j]));
        } else {
            parts.extend(values[i..=j].iter().map(i64::to_string));
        }
        i = j + 1;
    }
    parts.join(" ")
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_instance(doc: &InstanceDoc) -> String {
    let name = |x: VarId| doc.vars[x].name.clone();
    let list = |l: &[VarId]| join(l.iter().map(|&x| name(x)));
    let operand = |o: &Operand| match o {
        Operand::Const(k) => k.to_string(),
        Operand::Var(z) => name(*z),
    };
    let cond = |c: &Condition| format!("<condition>({},{})</condition>", c.op.name(), operand(&c.operand));
    let mut s = String::new();
    writeln!(s, "<instance format=\"XCSP3\" type=\"{}\">", doc.ty.name()).unwrap();
    s.push_str("  <variables>\n");
    for d in &doc.decls {
        if d.dims.is_empty() {
            writeln!(s, "    <var id=\"{}\"> {} </var>", d.name, domain_text(&d.values)).unwrap();
        } else {
            let size: String = d.dims.iter().map(|n| format!("[{n}]")).collect();
            writeln!(s, "    <array id=\"{}\" size=\"{size}\"> {} </array>", d.name, domain_text(&d.values)).unwrap();
        }
    }
    s.push_str("  </variables>\n  <constraints>\n");
    for c in &doc.ctrs {
        let body = match c {
            CtrDoc::Extension { list: l, tuples, positive } => {
                let tag = if *positive { "supports" } else { "conflicts" };
                // tuple syntax even for unary tables, to keep order and repetitions
                let rows: String = tuples
                    .iter()
                    .map(|t| {
                        let f: Vec<String> = t.iter().map(|v| v.map_or("*".into(), |v| v.to_string())).collect();
                        format!("({})", f.join(","))
                    })
                    .collect();
                format!("<list>{}</list><{tag}>{rows}</{tag}>", list(l))
            }
            CtrDoc::Intension(e) => e.display_with(&name).to_string(),
            CtrDoc::AllDifferent(terms) => join(terms.iter().map(|e| e.display_with(&name).to_string())),
            CtrDoc::AllEqual(l) => list(l),
            CtrDoc::Ordered { list: l, op } => format!("<list>{}</list><operator>{}</operator>", list(l), op.name()),
            CtrDoc::Lex { rows, op } => {
                let rows: String = rows.iter().map(|r| format!("<list>{}</list>", list(r))).collect();
                format!("{rows}<operator>{}</operator>", op.name())
            }
            CtrDoc::Precedence { list: l, values } => format!("<list>{}</list><values>{}</values>", list(l), join(values)),
            CtrDoc::Sum { list: l, coeffs, cond: c } => {
                format!("<list>{}</list><coeffs>{}</coeffs>{}", list(l), join(coeffs), cond(c))
            }
            CtrDoc::Count { list: l, values, cond: c } => {
                format!("<list>{}</list><values>{}</values>{}", list(l), join(values), cond(c))
            }
            CtrDoc::NValues { list: l, cond: c } | CtrDoc::Minimum { list: l, cond: c } | CtrDoc::Maximum { list: l, cond: c } => {
                format!("<list>{}</list>{}", list(l), cond(c))
            }
            CtrDoc::Element { list: l, start, index, value } => format!(
                "<list startIndex=\"{start}\">{}</list><index>{}</index><value>{}</value>",
                list(l),
                name(*index),
                operand(value)
            ),
            CtrDoc::Channel { list: l, list2 } => match list2 {
                Some(l2) => format!("<list>{}</list><list>{}</list>", list(l), list(l2)),
                None => format!("<list>{}</list>", list(l)),
            },
        };
        writeln!(s, "    <{0}>{body}</{0}>", c.tag()).unwrap();
    }
    s.push_str("  </constraints>\n");
    if let Some(o) = &doc.objective {
        let tag = if o.minimize { "minimize" } else { "maximize" };
        let inner = match &o.kind {
            ObjectiveKind::Var(x) => format!("<{tag}>{}</{tag}>", name(*x)),
            ObjectiveKind::Sum { scope, coeffs } => {
                format!("<{tag} type=\"sum\"><list>{}</list><coeffs>{}</coeffs></{tag}>", list(scope), join(coeffs))
            }
            ObjectiveKind::Minimum(l) => format!("<{tag} type=\"minimum\"><list>{}</list></{tag}>", list(l)),
            ObjectiveKind::Maximum(l) => format!("<{tag} type=\"maximum\"><list>{}</list></{tag}>", list(l)),
            ObjectiveKind::NValues(l) => format!("<{tag} type=\"nValues\"><list>{}</list></{tag}>", list(l)),
        };
        writeln!(s, "  <objectives>\n    {inner}\n  </objectives>").unwrap();
    }
    s.push_str("</instance>\n");
    s
}
