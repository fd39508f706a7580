use super::{Expr, Op};
use crate::domain::VarId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown identifier `{name}` at {pos}")]
    UnknownIdentifier { pos: usize, name: String },
    #[error("unknown operator `{name}` at {pos}")]
    UnknownOperator { pos: usize, name: String },
    #[error("operator `{op}` at {pos} cannot take {got} argument(s)")]
    Arity { pos: usize, op: &'static str, got: usize },
}

/// Parses functional syntax such as `eq(add(x,y),z)`. Whitespace is ignored.
/// Identifiers are resolved to variables with `resolve`.
pub fn parse_expression(text: &str, resolve: &dyn Fn(&str) -> Option<VarId>) -> Result<Expr, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, resolve };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.syntax("trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    resolve: &'a dyn Fn(&str) -> Option<VarId>,
}

fn is_ident_char(c: u8) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, b'_' | b'[' | b']' | b'.' | b'%' | b'$')
}

impl Parser<'_> {
    fn syntax(&self, msg: &str) -> ExprError {
        ExprError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.syntax(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let start = match self.peek() {
            Some(_) => self.pos,
            None => return Err(self.syntax("unexpected end of input")),
        };
        let c = self.src[start];
        if c == b'-' || c == b'+' || c.is_ascii_digit() {
            self.pos += 1;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return text
                .parse::<i64>()
                .map(Expr::Const)
                .map_err(|_| ExprError::Syntax { pos: start, msg: format!("bad integer `{text}`") });
        }
        if !is_ident_char(c) {
            return Err(self.syntax(&format!("unexpected `{}`", c as char)));
        }
        while self.pos < self.src.len() && is_ident_char(self.src[self.pos]) {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if self.peek() != Some(b'(') {
            return (self.resolve)(name)
                .map(Expr::Var)
                .ok_or_else(|| ExprError::UnknownIdentifier { pos: start, name: name.to_string() });
        }
        let op = Op::from_name(name).ok_or_else(|| ExprError::UnknownOperator { pos: start, name: name.to_string() })?;
        self.expect(b'(')?;
        let mut children = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
        } else {
            loop {
                children.push(self.expr()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.syntax("expected `,` or `)`")),
                }
            }
        }
        let (lo, hi) = op.arity();
        if children.len() < lo || hi.is_some_and(|h| children.len() > h) {
            return Err(ExprError::Arity { pos: start, op: op.name(), got: children.len() });
        }
        if op == Op::In && !matches!(children[1], Expr::Node(Op::Set, _)) {
            return Err(ExprError::Syntax { pos: start, msg: "second argument of `in` must be a set".into() });
        }
        Ok(Expr::Node(op, children))
    }
}
