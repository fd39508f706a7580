//! Reader for the supported subset of XCSP3.

use std::collections::HashMap;

use roxmltree::{Document, Node};

use cpsolve::constraint::CmpOp;
use cpsolve::expr::{parse_expression, Expr, ExprError};
use cpsolve::globals::{Condition, Operand};
use cpsolve::optimization::ObjectiveKind;
use cpsolve::VarId;

use crate::doc::{CtrDoc, InstanceDoc, InstanceType, ObjectiveDoc, VarDecl, VarInfo};
use crate::error::{Unsupported, XcspError};

type Result<T> = std::result::Result<T, XcspError>;

const CTR_ATTRS: &[&str] = &["id", "note"];

/// Parses an XCSP3 document. Groups and blocks are expanded in place, so
/// constraints come out in document order.
pub fn parse_instance(text: &str) -> Result<InstanceDoc> {
    let xml = Document::parse(text).map_err(|e| XcspError::Xml(e.to_string()))?;
    let mut r = Reader {
        xml: &xml,
        decls: Vec::new(),
        vars: Vec::new(),
        by_name: HashMap::new(),
        decl_by_name: HashMap::new(),
        ctrs: Vec::new(),
        objective: None,
        unsupported: Vec::new(),
    };
    let root = xml.root_element();
    if root.tag_name().name() != "instance" {
        return Err(XcspError::Invalid { line: r.line(root), msg: format!("root element is `{}`", root.tag_name().name()) });
    }
    r.check_attrs(root, &["format", "type"]);
    if let Some(f) = root.attribute("format").filter(|&f| f != "XCSP3") {
        return Err(XcspError::Invalid { line: r.line(root), msg: format!("format `{f}`") });
    }
    let ty = match root.attribute("type") {
        Some("CSP") => InstanceType::Csp,
        Some("COP") => InstanceType::Cop,
        other => return Err(XcspError::Invalid { line: r.line(root), msg: format!("instance type {other:?}") }),
    };
    for child in elements(root) {
        match child.tag_name().name() {
            "variables" => r.variables(child)?,
            "constraints" => r.constraints(child, &[])?,
            "objectives" => r.objectives(child)?,
            _ => r.unsupported(child, None),
        }
    }
    if !r.unsupported.is_empty() {
        return Err(XcspError::Unsupported(r.unsupported));
    }
    if (ty == InstanceType::Cop) != r.objective.is_some() {
        return Err(XcspError::Invalid { line: r.line(root), msg: format!("{} instance with{} objective", ty.name(), if r.objective.is_some() { "" } else { "out" }) });
    }
    Ok(InstanceDoc { ty, decls: r.decls, vars: r.vars, ctrs: r.ctrs, objective: r.objective })
}

fn elements<'a, 'i>(node: Node<'a, 'i>) -> impl Iterator<Item = Node<'a, 'i>> {
    node.children().filter(Node::is_element)
}

/// Whitespace-separated tokens with their byte offsets.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in text.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &text[s..]));
    }
    out
}

/// Tokens separated by whitespace outside parentheses, so that `add(x, 1)`
/// stays one token.
fn terms(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, None);
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push(&text[s..i]);
            }
        } else if start.is_none() && !c.is_whitespace() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(&text[s..]);
    }
    out
}

/// Values such as `1 4..6 9`, sorted and without duplicates.
pub(crate) fn parse_values(text: &str, what: &'static str, line: u32) -> Result<Vec<i64>> {
    let mut out = Vec::new();
    for (pos, tok) in tokens(text) {
        let bad = || XcspError::Malformed { what, line, pos, text: text.trim().to_string() };
        match tok.split_once("..") {
            Some((a, b)) => {
                let (a, b): (i64, i64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(tok.parse().map_err(|_| bad())?),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_ints(text: &str, what: &'static str, line: u32) -> Result<Vec<i64>> {
    tokens(text)
        .into_iter()
        .map(|(pos, t)| t.parse().map_err(|_| XcspError::Malformed { what, line, pos, text: text.trim().to_string() }))
        .collect()
}

/// Tuples in the form `(0,1)(1,*)`.
pub(crate) fn parse_tuples(text: &str, arity: usize, line: u32) -> Result<Vec<Vec<Option<i64>>>> {
    let bytes = text.as_bytes();
    let bad = |pos: usize| XcspError::Malformed { what: "tuple", line, pos, text: text.trim().to_string() };
    let mut out = Vec::new();
    let mut i = 0;
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i == bytes.len() {
            return Ok(out);
        }
        if bytes[i] != b'(' {
            return Err(bad(i));
        }
        let close = text[i..].find(')').map(|k| i + k).ok_or_else(|| bad(i))?;
        let mut row = Vec::with_capacity(arity);
        let mut pos = i + 1;
        for field in text[i + 1..close].split(',') {
            let f = field.trim();
            row.push(match f {
                "*" => None,
                _ => Some(f.parse().map_err(|_| bad(pos))?),
            });
            pos += field.len() + 1;
        }
        if row.len() != arity {
            return Err(bad(i));
        }
        out.push(row);
        i = close + 1;
    }
}

struct Reader<'a, 'i> {
    xml: &'a Document<'i>,
    decls: Vec<VarDecl>,
    vars: Vec<VarInfo>,
    by_name: HashMap<String, VarId>,
    decl_by_name: HashMap<String, usize>,
    ctrs: Vec<CtrDoc>,
    objective: Option<ObjectiveDoc>,
    unsupported: Vec<Unsupported>,
}

impl<'a, 'i> Reader<'a, 'i> {
    fn line(&self, node: Node) -> u32 {
        self.xml.text_pos_at(node.range().start).row
    }

    fn unsupported(&mut self, node: Node, attribute: Option<&str>) {
        let u = Unsupported {
            element: node.tag_name().name().to_string(),
            attribute: attribute.map(str::to_string),
            line: self.line(node),
        };
        self.unsupported.push(u);
    }

    fn check_attrs(&mut self, node: Node, allowed: &[&str]) -> bool {
        let bad: Vec<String> =
            node.attributes().map(|a| a.name().to_string()).filter(|a| !allowed.contains(&a.as_str())).collect();
        for a in &bad {
            self.unsupported(node, Some(a));
        }
        bad.is_empty()
    }

    /// Element children, recording those not in `allowed`. `None` if some
    /// child was rejected.
    fn children(&mut self, node: Node<'a, 'i>, allowed: &[&str]) -> Option<Vec<Node<'a, 'i>>> {
        let mut ok = true;
        let mut out = Vec::new();
        for c in elements(node) {
            if allowed.contains(&c.tag_name().name()) {
                out.push(c);
            } else {
                self.unsupported(c, None);
                ok = false;
            }
        }
        ok.then_some(out)
    }

    /// Text content with `%i` replaced by group arguments.
    fn text(&self, node: Node, subst: &[&str]) -> Result<String> {
        let raw: String = node.children().filter(Node::is_text).filter_map(|t| t.text()).collect();
        if !raw.contains('%') {
            return Ok(raw.trim().to_string());
        }
        let line = self.line(node);
        let mut out = String::new();
        let mut rest = raw.as_str();
        while let Some(k) = rest.find('%') {
            out.push_str(&rest[..k]);
            let digits: String = rest[k + 1..].chars().take_while(char::is_ascii_digit).collect();
            let arg = digits.parse::<usize>().ok().and_then(|i| subst.get(i));
            let Some(arg) = arg else {
                return Err(XcspError::Malformed { what: "group argument", line, pos: raw.len() - rest.len() + k, text: raw.trim().to_string() });
            };
            out.push_str(arg);
            rest = &rest[k + 1 + digits.len()..];
        }
        out.push_str(rest);
        Ok(out.trim().to_string())
    }

    fn variables(&mut self, node: Node<'a, 'i>) -> Result<()> {
        self.check_attrs(node, &[]);
        let Some(children) = self.children(node, &["var", "array"]) else { return Ok(()) };
        for v in children {
            let line = self.line(v);
            let allowed: &[&str] = if v.has_tag_name("array") { &["id", "size", "type"] } else { &["id", "type"] };
            let attrs_ok = self.check_attrs(v, allowed);
            if elements(v).next().is_some() {
                let _ = self.children(v, &[]);
                continue;
            }
            if !attrs_ok {
                continue;
            }
            if let Some(t) = v.attribute("type").filter(|&t| t != "integer") {
                return Err(XcspError::Invalid { line, msg: format!("variable type `{t}`") });
            }
            let id = v.attribute("id").ok_or(XcspError::Invalid { line, msg: "missing id".into() })?.to_string();
            if self.decl_by_name.contains_key(&id) || self.by_name.contains_key(&id) {
                return Err(XcspError::Duplicate { id, line });
            }
            let values = parse_values(&self.text(v, &[])?, "domain", line)?;
            if values.is_empty() {
                return Err(XcspError::Invalid { line, msg: format!("empty domain for `{id}`") });
            }
            let dims = if v.has_tag_name("array") {
                let size = v.attribute("size").ok_or(XcspError::Invalid { line, msg: "missing size".into() })?;
                parse_dims(size).ok_or(XcspError::Malformed { what: "size", line, pos: 0, text: size.to_string() })?
            } else {
                Vec::new()
            };
            let decl = VarDecl { name: id.clone(), dims, values, first: self.vars.len() };
            for name in cell_names(&decl) {
                self.by_name.insert(name.clone(), self.vars.len());
                self.vars.push(VarInfo { name, values: decl.values.clone() });
            }
            self.decl_by_name.insert(id, self.decls.len());
            self.decls.push(decl);
        }
        Ok(())
    }

    /// Variables denoted by `x`, `x[2]`, `x[]`, `x[1..3][0]`, row-major.
    fn expand(&self, token: &str, line: u32) -> Result<Vec<VarId>> {
        let undeclared = || XcspError::Undeclared { id: token.to_string(), line };
        let Some(open) = token.find('[') else {
            return match self.decl_by_name.get(token).map(|&d| &self.decls[d]) {
                Some(d) if d.dims.is_empty() => Ok(vec![d.first]),
                Some(_) => Err(XcspError::Invalid { line, msg: format!("array `{token}` used without indexes") }),
                None => Err(undeclared()),
            };
        };
        let decl = &self.decls[*self.decl_by_name.get(&token[..open]).ok_or_else(undeclared)?];
        let malformed = || XcspError::Malformed { what: "reference", line, pos: open, text: token.to_string() };
        let mut ranges = Vec::new();
        let mut rest = &token[open..];
        while let Some(r) = rest.strip_prefix('[') {
            let close = r.find(']').ok_or_else(malformed)?;
            let dim = *decl.dims.get(ranges.len()).ok_or_else(malformed)?;
            let spec = &r[..close];
            let (lo, hi) = if spec.is_empty() {
                (0, dim.checked_sub(1).ok_or_else(malformed)?)
            } else if let Some((a, b)) = spec.split_once("..") {
                (a.parse().map_err(|_| malformed())?, b.parse().map_err(|_| malformed())?)
            } else {
                let i = spec.parse().map_err(|_| malformed())?;
                (i, i)
            };
            if lo > hi || hi >= dim {
                return Err(XcspError::Invalid { line, msg: format!("index out of bounds in `{token}`") });
            }
            ranges.push((lo, hi));
            rest = &r[close + 1..];
        }
        if !rest.is_empty() || ranges.len() != decl.dims.len() {
            return Err(malformed());
        }
        let mut out = vec![0usize];
        for (k, &(lo, hi)) in ranges.iter().enumerate() {
            let stride: usize = decl.dims[k + 1..].iter().product();
            out = out.into_iter().flat_map(|base| (lo..=hi).map(move |i| base + i * stride)).collect();
        }
        Ok(out.into_iter().map(|o| decl.first + o).collect())
    }

    fn var_list(&self, text: &str, line: u32) -> Result<Vec<VarId>> {
        let mut out = Vec::new();
        for (_, t) in tokens(text) {
            out.extend(self.expand(t, line)?);
        }
        Ok(out)
    }

    fn expression(&self, text: &str, line: u32) -> Result<Expr> {
        parse_expression(text, &|s| self.by_name.get(s).copied()).map_err(|e| match e {
            ExprError::UnknownIdentifier { name, .. } => XcspError::Undeclared { id: name, line },
            other => XcspError::Invalid { line, msg: other.to_string() },
        })
    }

    fn operand(&self, text: &str, line: u32) -> Result<Operand> {
        match text.trim().parse() {
            Ok(k) => Ok(Operand::Const(k)),
            Err(_) => match self.expand(text.trim(), line)?.as_slice() {
                [x] => Ok(Operand::Var(*x)),
                _ => Err(XcspError::Invalid { line, msg: format!("`{text}` is not a single variable") }),
            },
        }
    }

    /// `(op,operand)`.
    fn condition(&self, text: &str, line: u32) -> Result<Condition> {
        let bad = |pos| XcspError::Malformed { what: "condition", line, pos, text: text.to_string() };
        let inner = text.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| bad(0))?;
        let (op, rhs) = inner.split_once(',').ok_or_else(|| bad(1))?;
        let op = CmpOp::from_name(op.trim()).ok_or_else(|| bad(1))?;
        Ok(Condition::new(op, self.operand(rhs, line)?))
    }

    fn constraints(&mut self, node: Node<'a, 'i>, subst: &[&str]) -> Result<()> {
        for c in elements(node) {
            self.constraint(c, subst, subst.is_empty())?;
        }
        Ok(())
    }

    fn constraint(&mut self, node: Node<'a, 'i>, subst: &[&str], top: bool) -> Result<()> {
        let line = self.line(node);
        let tag = node.tag_name().name();
        match tag {
            "block" => {
                if self.check_attrs(node, &["id", "note", "class"]) {
                    self.constraints(node, subst)?;
                }
                return Ok(());
            }
            "group" if top => return self.group(node),
            _ => {}
        }
        if !self.check_attrs(node, CTR_ATTRS) {
            return Ok(());
        }
        let allowed: &[&str] = match tag {
            "extension" => &["list", "supports", "conflicts"],
            "intension" => &["function"],
            "allDifferent" | "allEqual" | "nValues" | "minimum" | "maximum" => &["list", "condition"],
            "ordered" | "lex" => &["list", "operator"],
            "precedence" => &["list", "values"],
            "sum" => &["list", "coeffs", "condition"],
            "count" => &["list", "values", "condition"],
            "element" => &["list", "index", "value"],
            "channel" => &["list"],
            _ => {
                self.unsupported(node, None);
                return Ok(());
            }
        };
        let Some(children) = self.children(node, allowed) else { return Ok(()) };
        let mut parts: HashMap<&str, Vec<Node>> = HashMap::new();
        for c in &children {
            let ok = match c.tag_name().name() {
                "list" if tag == "element" => self.check_attrs(*c, &["startIndex"]),
                _ => self.check_attrs(*c, &[]),
            };
            if !ok {
                return Ok(());
            }
            parts.entry(c.tag_name().name()).or_default().push(*c);
        }
        let one = |name: &str| -> Result<Option<String>> {
            match parts.get(name).map(Vec::as_slice) {
                None => Ok(None),
                Some([n]) => Ok(Some(self.text(*n, subst)?)),
                Some(_) => Err(XcspError::Invalid { line, msg: format!("several <{name}> in <{tag}>") }),
            }
        };
        let need = |name: &str| -> Result<String> {
            one(name)?.ok_or_else(|| XcspError::Invalid { line, msg: format!("<{tag}> without <{name}>") })
        };
        // a bare text body stands for the list (or the function)
        let body = if children.is_empty() { Some(self.text(node, subst)?) } else { None };
        let list_text = || -> Result<String> {
            match &body {
                Some(b) => Ok(b.clone()),
                None => need("list"),
            }
        };
        let list = || -> Result<Vec<VarId>> { self.var_list(&list_text()?, line) };
        let operator = || -> Result<CmpOp> {
            let t = need("operator")?;
            CmpOp::from_name(&t)
                .filter(|op| !matches!(op, CmpOp::Eq | CmpOp::Ne))
                .ok_or(XcspError::Malformed { what: "operator", line, pos: 0, text: t })
        };
        let cond = || -> Result<Condition> { self.condition(&need("condition")?, line) };
        let ctr = match tag {
            "extension" => {
                let list = list()?;
                let (text, positive) = match (one("supports")?, one("conflicts")?) {
                    (Some(t), None) => (t, true),
                    (None, Some(t)) => (t, false),
                    _ => return Err(XcspError::Invalid { line, msg: "extension needs supports or conflicts".into() }),
                };
                let tuples = if list.len() == 1 && !text.contains('(') {
                    parse_values(&text, "values", line)?.into_iter().map(|v| vec![Some(v)]).collect()
                } else {
                    parse_tuples(&text, list.len(), line)?
                };
                CtrDoc::Extension { list, tuples, positive }
            }
            "intension" => {
                let text = match &body {
                    Some(b) => b.clone(),
                    None => need("function")?,
                };
                let e = self.expression(&text, line)?;
                if !e.is_predicate() {
                    return Err(XcspError::Invalid { line, msg: format!("`{text}` is not a predicate") });
                }
                CtrDoc::Intension(e)
            }
            "allDifferent" => {
                let mut out = Vec::new();
                for t in terms(&list_text()?) {
                    if t.contains('(') {
                        out.push(self.expression(t, line)?);
                    } else {
                        out.extend(self.expand(t, line)?.into_iter().map(Expr::Var));
                    }
                }
                CtrDoc::AllDifferent(out)
            }
            "allEqual" => CtrDoc::AllEqual(list()?),
            "ordered" => CtrDoc::Ordered { list: list()?, op: operator()? },
            "lex" => {
                let rows = parts.get("list").map(Vec::as_slice).unwrap_or(&[]);
                if rows.len() < 2 {
                    return Err(XcspError::Invalid { line, msg: "lex needs at least two lists".into() });
                }
                let rows: Vec<Vec<VarId>> =
                    rows.iter().map(|n| self.var_list(&self.text(*n, subst)?, line)).collect::<Result<_>>()?;
                if rows.iter().any(|r| r.len() != rows[0].len()) {
                    return Err(XcspError::Invalid { line, msg: "lex lists of different lengths".into() });
                }
                CtrDoc::Lex { rows, op: operator()? }
            }
            "precedence" => CtrDoc::Precedence { list: list()?, values: parse_ints(&need("values")?, "values", line)? },
            "sum" => {
                let list = list()?;
                let coeffs = match one("coeffs")? {
                    Some(t) => parse_ints(&t, "coeffs", line)?,
                    None => vec![1; list.len()],
                };
                if coeffs.len() != list.len() {
                    return Err(XcspError::Invalid { line, msg: "coeffs and list of different lengths".into() });
                }
                CtrDoc::Sum { list, coeffs, cond: cond()? }
            }
            "count" => CtrDoc::Count { list: list()?, values: parse_ints(&need("values")?, "values", line)?, cond: cond()? },
            "nValues" => CtrDoc::NValues { list: list()?, cond: cond()? },
            "minimum" => CtrDoc::Minimum { list: list()?, cond: cond()? },
            "maximum" => CtrDoc::Maximum { list: list()?, cond: cond()? },
            "element" => {
                let start = match parts.get("list").and_then(|l| l[0].attribute("startIndex")) {
                    Some(s) => s.parse().map_err(|_| XcspError::Malformed { what: "startIndex", line, pos: 0, text: s.into() })?,
                    None => 0,
                };
                let index = match self.operand(&need("index")?, line)? {
                    Operand::Var(x) => x,
                    Operand::Const(_) => return Err(XcspError::Invalid { line, msg: "constant index".into() }),
                };
                CtrDoc::Element { list: list()?, start, index, value: self.operand(&need("value")?, line)? }
            }
            "channel" => match (&body, parts.get("list").map(Vec::as_slice)) {
                (Some(b), _) => CtrDoc::Channel { list: self.var_list(b, line)?, list2: None },
                (None, Some([a])) => CtrDoc::Channel { list: self.var_list(&self.text(*a, subst)?, line)?, list2: None },
                (None, Some([a, b])) => {
                    let list = self.var_list(&self.text(*a, subst)?, line)?;
                    let list2 = self.var_list(&self.text(*b, subst)?, line)?;
                    if list.len() != list2.len() {
                        return Err(XcspError::Invalid { line, msg: "channel lists of different lengths".into() });
                    }
                    CtrDoc::Channel { list, list2: Some(list2) }
                }
                _ => return Err(XcspError::Invalid { line, msg: "channel needs one or two lists".into() }),
            },
            _ => unreachable!(),
        };
        let scope_empty = match &ctr {
            CtrDoc::Intension(_) => false,
            CtrDoc::AllDifferent(t) => t.is_empty(),
            CtrDoc::Extension { list, .. }
            | CtrDoc::AllEqual(list)
            | CtrDoc::Ordered { list, .. }
            | CtrDoc::Precedence { list, .. }
            | CtrDoc::Sum { list, .. }
            | CtrDoc::Count { list, .. }
            | CtrDoc::NValues { list, .. }
            | CtrDoc::Minimum { list, .. }
            | CtrDoc::Maximum { list, .. }
            | CtrDoc::Element { list, .. }
            | CtrDoc::Channel { list, .. } => list.is_empty(),
            CtrDoc::Lex { rows, .. } => rows[0].is_empty(),
        };
        if scope_empty {
            return Err(XcspError::Invalid { line, msg: format!("<{tag}> over an empty list") });
        }
        self.ctrs.push(ctr);
        Ok(())
    }

    /// `<group>`: a template constraint followed by `<args>` elements.
    fn group(&mut self, node: Node<'a, 'i>) -> Result<()> {
        let line = self.line(node);
        if !self.check_attrs(node, CTR_ATTRS) {
            return Ok(());
        }
        let mut it = elements(node);
        let Some(template) = it.next() else {
            return Err(XcspError::Invalid { line, msg: "empty group".into() });
        };
        if matches!(template.tag_name().name(), "group" | "block") {
            self.unsupported(template, None);
            return Ok(());
        }
        for args in it {
            if !args.has_tag_name("args") {
                self.unsupported(args, None);
                continue;
            }
            let text = self.text(args, &[])?;
            let subst: Vec<&str> = tokens(&text).into_iter().map(|(_, t)| t).collect();
            if subst.is_empty() {
                return Err(XcspError::Invalid { line: self.line(args), msg: "empty args".into() });
            }
            self.constraint(template, &subst, false)?;
        }
        Ok(())
    }

    fn objectives(&mut self, node: Node<'a, 'i>) -> Result<()> {
        self.check_attrs(node, &[]);
        let Some(children) = self.children(node, &["minimize", "maximize"]) else { return Ok(()) };
        if children.len() > 1 {
            for c in &children[1..] {
                self.unsupported(*c, None);
            }
            return Ok(());
        }
        let Some(&o) = children.first() else { return Ok(()) };
        let line = self.line(o);
        if !self.check_attrs(o, &["id", "type"]) {
            return Ok(());
        }
        let Some(parts) = self.children(o, &["list", "coeffs"]) else { return Ok(()) };
        for p in &parts {
            self.check_attrs(*p, &[]);
        }
        let text_of = |name: &str| parts.iter().find(|p| p.has_tag_name(name)).map(|p| self.text(*p, &[])).transpose();
        let list = match text_of("list")? {
            Some(t) => self.var_list(&t, line)?,
            None => self.var_list(&self.text(o, &[])?, line)?,
        };
        if list.is_empty() {
            return Err(XcspError::Invalid { line, msg: "objective over no variable".into() });
        }
        let kind = match o.attribute("type") {
            None | Some("expression") if list.len() == 1 && parts.is_empty() => ObjectiveKind::Var(list[0]),
            Some("sum") => {
                let coeffs = match text_of("coeffs")? {
                    Some(t) => parse_ints(&t, "coeffs", line)?,
                    None => vec![1; list.len()],
                };
                if coeffs.len() != list.len() {
                    return Err(XcspError::Invalid { line, msg: "coeffs and list of different lengths".into() });
                }
                ObjectiveKind::Sum { scope: list, coeffs }
            }
            Some("minimum") => ObjectiveKind::Minimum(list),
            Some("maximum") => ObjectiveKind::Maximum(list),
            Some("nValues") => ObjectiveKind::NValues(list),
            _ => {
                self.unsupported(o, Some("type"));
                return Ok(());
            }
        };
        self.objective = Some(ObjectiveDoc { minimize: o.has_tag_name("minimize"), kind });
        Ok(())
    }
}

fn parse_dims(size: &str) -> Option<Vec<usize>> {
    let mut dims = Vec::new();
    let mut rest = size.trim();
    while let Some(r) = rest.strip_prefix('[') {
        let close = r.find(']')?;
        dims.push(r[..close].trim().parse().ok().filter(|&d| d > 0)?);
        rest = &r[close + 1..];
    }
    (rest.is_empty() && !dims.is_empty()).then_some(dims)
}

/// Names of the cells of a declaration, row-major.
pub(crate) fn cell_names(decl: &VarDecl) -> Vec<String> {
    let mut names = vec![decl.name.clone()];
    for &d in &decl.dims {
        names = names.into_iter().flat_map(|n| (0..d).map(move |i| format!("{n}[{i}]"))).collect();
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wrap(vars: &str, ctrs: &str) -> String {
        format!("<instance format=\"XCSP3\" type=\"CSP\"><variables>{vars}</variables><constraints>{ctrs}</constraints></instance>")
    }

    #[test]
    fn mixed_domain_text() {
        let d = parse_instance(&wrap("<var id=\"x\"> 1 4..6 9 </var><var id=\"y\">1 4 5</var>", "")).unwrap();
        assert_eq!(d.vars[0].values, vec![1, 4, 5, 6, 9]);
        assert_eq!(d.vars[1].values, vec![1, 4, 5]);
    }

    #[test]
    fn supports_table() {
        let d = parse_instance(&wrap(
            "<var id=\"x\">0 1</var><var id=\"y\">0 1</var>",
            "<extension><list>x y</list><supports>(0,0)(1,1)</supports></extension>",
        ))
        .unwrap();
        match &d.ctrs[0] {
            CtrDoc::Extension { list, tuples, positive } => {
                assert_eq!(list, &vec![0, 1]);
                assert_eq!(tuples, &vec![vec![Some(0), Some(0)], vec![Some(1), Some(1)]]);
                assert!(positive);
            }
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn array_references() {
        let d = parse_instance(&wrap("<array id=\"m\" size=\"[2][3]\">0..2</array>", "<allEqual>m[1][] m[0][0..1]</allEqual>")).unwrap();
        assert_eq!(d.vars.len(), 6);
        assert_eq!(d.vars[4].name, "m[1][1]");
        assert_eq!(d.ctrs[0], CtrDoc::AllEqual(vec![3, 4, 5, 0, 1]));
    }

    #[test]
    fn group_substitution() {
        let d = parse_instance(&wrap(
            "<array id=\"x\" size=\"[3]\">0..3</array>",
            "<group><intension>lt(%0,%1)</intension><args>x[0] x[1]</args><args>x[1] x[2]</args></group>",
        ))
        .unwrap();
        assert_eq!(d.ctrs.len(), 2);
        assert!(d.ctrs[1].holds(&[0, 1, 2]) && !d.ctrs[1].holds(&[0, 2, 2]));
    }

    #[test]
    fn unsupported_elements_are_listed() {
        let err = parse_instance(&wrap(
            "<var id=\"x\">0 1</var>",
            "<cumulative/><block><circuit>x</circuit></block><sum id=\"s\" foo=\"1\"/>",
        ))
        .unwrap_err();
        match err {
            XcspError::Unsupported(list) => {
                let names: Vec<String> = list.iter().map(ToString::to_string).collect();
                assert_eq!(names, vec!["cumulative:1", "circuit:1", "sum@foo:1"]);
            }
            e => panic!("{e}"),
        }
    }

    #[test]
    fn undeclared_reference() {
        let err = parse_instance(&wrap("<var id=\"x\">0 1</var>", "<allEqual>x y</allEqual>")).unwrap_err();
        assert!(matches!(err, XcspError::Undeclared { ref id, .. } if id == "y"), "{err}");
        let err = parse_instance(&wrap("<var id=\"x\">0 1</var>", "<intension>eq(x,z)</intension>")).unwrap_err();
        assert!(matches!(err, XcspError::Undeclared { ref id, .. } if id == "z"), "{err}");
    }

    #[test]
    fn malformed_positions() {
        let err = parse_instance(&wrap("<var id=\"x\">0 1..a</var>", "")).unwrap_err();
        assert!(matches!(err, XcspError::Malformed { what: "domain", pos: 2, .. }), "{err}");
        let err = parse_instance(&wrap(
            "<var id=\"x\">0 1</var><var id=\"y\">0 1</var>",
            "<extension><list>x y</list><supports>(0,1)(1,q)</supports></extension>",
        ))
        .unwrap_err();
        assert!(matches!(err, XcspError::Malformed { what: "tuple", pos: 8, .. }), "{err}");
    }

    #[test]
    fn conditions() {
        let d = parse_instance(&wrap(
            "<var id=\"x\">0..3</var><var id=\"z\">0..3</var>",
            "<sum><list>x z</list><coeffs>2 -1</coeffs><condition>(ge, z)</condition></sum>",
        ))
        .unwrap();
        assert_eq!(d.ctrs[0], CtrDoc::Sum { list: vec![0, 1], coeffs: vec![2, -1], cond: Condition::var(CmpOp::Ge, 1) });
    }

    #[test]
    fn objective_forms() {
        let text = "<instance format=\"XCSP3\" type=\"COP\"><variables><array id=\"x\" size=\"[2]\">0..3</array></variables>\
            <objectives><maximize type=\"sum\"><list>x[]</list><coeffs>1 2</coeffs></maximize></objectives></instance>";
        let d = parse_instance(text).unwrap();
        let o = d.objective.unwrap();
        assert!(!o.minimize);
        assert_eq!(o.kind, ObjectiveKind::Sum { scope: vec![0, 1], coeffs: vec![1, 2] });
        let text = "<instance format=\"XCSP3\" type=\"COP\"><variables><var id=\"y\">0..3</var></variables>\
            <objectives><minimize> y </minimize></objectives></instance>";
        assert_eq!(parse_instance(text).unwrap().objective.unwrap().kind, ObjectiveKind::Var(0));
    }
}
