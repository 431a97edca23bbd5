//! S-expression syntax:
//!
//! ```text
//! f ::= (and f f+) | (or f f+) | (not f) | (implies f f) | (iff f f)
//!     | (forall v f) | (exists v f) | (forallset V f) | (existsset V f)
//!     | (= v v) | (edg v v) | (inc v v) | (in v V) | (card NAT V)
//!     | (pred NAME v)
//! ```
//!
//! `forall` and `exists` applied to an uppercase variable are read as
//! `forallset` and `existsset`. `;` starts a comment that runs to the end of the line.

use super::ast::{is_individual_name, is_set_name, Formula};
use crate::error::{Error, Result};

/// Byte range of a piece of source text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug)]
enum Sexp {
    Atom(String, Span),
    List(Vec<Sexp>, Span),
}

impl Sexp {
    fn span(&self) -> Span {
        match self {
            Sexp::Atom(_, s) | Sexp::List(_, s) => *s,
        }
    }
}

struct Reader<'a> {
    src: &'a str,
    pos: usize,
}

impl Reader<'_> {
    fn error(&self, at: usize, msg: impl Into<String>) -> Error {
        let before = &self.src[..at.min(self.src.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse { line, col, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() {
            match bytes[self.pos] {
                b';' => {
                    while self.pos < bytes.len() && bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp> {
        self.skip_ws();
        let bytes = self.src.as_bytes();
        let start = self.pos;
        match bytes.get(self.pos) {
            None => Err(self.error(start, "unexpected end of input")),
            Some(b')') => Err(self.error(start, "unexpected `)`")),
            Some(b'(') => {
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match bytes.get(self.pos) {
                        None => return Err(self.error(start, "unclosed `(`")),
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(Sexp::List(items, Span { start, end: self.pos }));
                        }
                        _ => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                while self.pos < bytes.len()
                    && !bytes[self.pos].is_ascii_whitespace()
                    && !matches!(bytes[self.pos], b'(' | b')' | b';')
                {
                    self.pos += 1;
                }
                let text = &self.src[start..self.pos];
                Ok(Sexp::Atom(text.to_string(), Span { start, end: self.pos }))
            }
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut r = Reader { src: text, pos: 0 };
    let sexp = r.read()?;
    r.skip_ws();
    if r.pos != text.len() {
        return Err(r.error(r.pos, "trailing input after formula"));
    }
    convert(&r, &sexp)
}

fn convert(r: &Reader<'_>, s: &Sexp) -> Result<Formula> {
    let (items, span) = match s {
        Sexp::Atom(a, sp) => return Err(r.error(sp.start, format!("expected a parenthesised formula, found `{a}`"))),
        Sexp::List(items, sp) => (items, *sp),
    };
    let Some(Sexp::Atom(head, _)) = items.first() else {
        return Err(r.error(span.start, "expected an operator after `(`"));
    };
    let args = &items[1..];
    let arity = |n: usize| -> Result<()> {
        if args.len() != n {
            Err(r.error(span.start, format!("`{head}` takes {n} arguments, found {}", args.len())))
        } else {
            Ok(())
        }
    };
    let atom = |i: usize, want_set: bool| -> Result<String> {
        match &args[i] {
            Sexp::Atom(a, sp) => {
                let ok = if want_set { is_set_name(a) } else { is_individual_name(a) };
                if ok {
                    Ok(a.clone())
                } else {
                    let kind = if want_set { "set variable [A-Z][A-Za-z0-9]*" } else { "individual variable [a-z][a-z0-9]*" };
                    Err(r.error(sp.start, format!("expected {kind}, found `{a}`")))
                }
            }
            other => Err(r.error(other.span().start, "expected a variable, found a list")),
        }
    };
    let sub = |i: usize| convert(r, &args[i]).map(Box::new);
    Ok(match head.as_str() {
        "and" | "or" => {
            if args.len() < 2 {
                return Err(r.error(span.start, format!("`{head}` needs at least two arguments")));
            }
            let parts = args.iter().map(|a| convert(r, a)).collect::<Result<Vec<_>>>()?;
            if head == "and" {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
        "not" => {
            arity(1)?;
            Formula::Not(sub(0)?)
        }
        "implies" => {
            arity(2)?;
            Formula::Implies(sub(0)?, sub(1)?)
        }
        "iff" => {
            arity(2)?;
            Formula::Iff(sub(0)?, sub(1)?)
        }
        "forall" | "exists" => {
            arity(2)?;
            // An uppercase variable makes this a set quantifier.
            let set = matches!(&args[0], Sexp::Atom(a, _) if is_set_name(a));
            let v = atom(0, set)?;
            let b = sub(1)?;
            match (head == "forall", set) {
                (true, false) => Formula::Forall(v, b),
                (false, false) => Formula::Exists(v, b),
                (true, true) => Formula::ForallSet(v, b),
                (false, true) => Formula::ExistsSet(v, b),
            }
        }
        "forallset" | "existsset" => {
            arity(2)?;
            let v = atom(0, true)?;
            let b = sub(1)?;
            if head == "forallset" {
                Formula::ForallSet(v, b)
            } else {
                Formula::ExistsSet(v, b)
            }
        }
        "=" | "edg" | "inc" => {
            arity(2)?;
            let (a, b) = (atom(0, false)?, atom(1, false)?);
            match head.as_str() {
                "=" => Formula::Eq(a, b),
                "edg" => Formula::Edg(a, b),
                _ => Formula::Inc(a, b),
            }
        }
        "in" => {
            arity(2)?;
            Formula::In(atom(0, false)?, atom(1, true)?)
        }
        "card" => {
            arity(2)?;
            let q = match &args[0] {
                Sexp::Atom(a, sp) => a
                    .parse::<u32>()
                    .ok()
                    .filter(|&q| q >= 1)
                    .ok_or_else(|| r.error(sp.start, format!("expected a positive modulus, found `{a}`")))?,
                other => return Err(r.error(other.span().start, "expected a positive modulus")),
            };
            Formula::Card(q, atom(1, true)?)
        }
        "pred" => {
            arity(2)?;
            let name = match &args[0] {
                Sexp::Atom(a, _) if a.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                    && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') => a.clone(),
                other => return Err(r.error(other.span().start, "expected a predicate name")),
            };
            Formula::Pred(name, atom(1, false)?)
        }
        other => return Err(r.error(span.start, format!("unknown operator `{other}`"))),
    })
}
