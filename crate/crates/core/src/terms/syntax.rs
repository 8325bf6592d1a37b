//! Textual term notation: `plus(X,s(zero))`.
//!
//! Identifiers starting with an uppercase letter or `_`, or ending in a
//! prime (`x'`), are variables. Everything else is a symbol. `%` starts a
//! comment running to the end of the line.

use std::collections::BTreeMap;

use super::{Equation, Position, Substitution, Symbol, Term, Var};
use crate::error::{Error, Result};

/// How variable names are mapped to ids while parsing.
#[derive(Debug, Clone)]
pub enum VarScope {
    /// Fresh ids in first-occurrence order.
    Fresh {
        names: BTreeMap<String, Var>,
        order: Vec<String>,
    },
    /// Names must be `X<n>`; the id is `n`.
    Literal,
}

impl VarScope {
    pub fn fresh() -> Self {
        VarScope::Fresh {
            names: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    fn resolve(&mut self, name: &str) -> Option<Var> {
        match self {
            VarScope::Fresh { names, order } => {
                let next = names.len() as Var;
                Some(*names.entry(name.to_string()).or_insert_with(|| {
                    order.push(name.to_string());
                    next
                }))
            }
            VarScope::Literal => name.strip_prefix('X').and_then(|n| n.parse().ok()),
        }
    }

    /// Variable names in id order (fresh scopes only).
    pub fn names(&self) -> &[String] {
        match self {
            VarScope::Fresh { order, .. } => order,
            VarScope::Literal => &[],
        }
    }
}

pub fn is_variable_name(name: &str) -> bool {
    name.starts_with(|c: char| c.is_ascii_uppercase() || c == '_') || name.ends_with('\'')
}

/// Parses one complete term with a fresh variable scope.
pub fn parse_term(src: &str) -> Result<Term> {
    let mut p = TermParser::new(src);
    let t = p.term(&mut VarScope::fresh())?;
    p.expect_end()?;
    Ok(t)
}

/// Parses `l = r` with one fresh scope shared by both sides.
pub fn parse_equation(src: &str) -> Result<Equation> {
    let mut p = TermParser::new(src);
    let eq = p.equation(&mut VarScope::fresh())?;
    p.expect_end()?;
    Ok(eq)
}

/// Hand-written scanner shared by the problem, theory, proof and snapshot readers.
pub struct TermParser<'a> {
    src: &'a str,
    offset: usize,
}

impl<'a> TermParser<'a> {
    pub fn new(src: &'a str) -> Self {
        TermParser { src, offset: 0 }
    }

    pub fn rest(&self) -> &'a str {
        &self.src[self.offset..]
    }

    pub fn line_col(&self) -> (usize, usize) {
        let before = &self.src[..self.offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.len(), |i| before.len() - i - 1) + 1;
        (line, column)
    }

    pub fn error(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.line_col();
        Error::Syntax {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn unsupported(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.line_col();
        Error::Unsupported {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn skip_ws(&mut self) {
        loop {
            let rest = self.rest();
            let trimmed = rest.trim_start();
            self.offset += rest.len() - trimmed.len();
            if trimmed.starts_with('%') {
                self.offset += trimmed.find('\n').unwrap_or(trimmed.len());
            } else {
                break;
            }
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.rest().is_empty()
    }

    pub fn expect_end(&mut self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error(format!("unexpected trailing input `{}`", preview(self.rest()))))
        }
    }

    pub fn peek(&mut self, token: &str) -> bool {
        self.skip_ws();
        self.rest().starts_with(token)
    }

    pub fn eat(&mut self, token: &str) -> bool {
        if self.peek(token) {
            self.offset += token.len();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!(
                "expected `{token}`, found `{}`",
                preview(self.rest())
            )))
        }
    }

    pub fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let rest = self.rest();
        let mut len = rest
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error(format!("expected identifier, found `{}`", preview(rest))));
        }
        while rest[len..].starts_with('\'') {
            len += 1;
        }
        self.offset += len;
        Ok(rest[..len].to_string())
    }

    /// Consumes everything up to (not including) `stop`, trimmed.
    pub fn until(&mut self, stop: char) -> Result<String> {
        self.skip_ws();
        let rest = self.rest();
        let end = rest
            .find(stop)
            .ok_or_else(|| self.error(format!("expected `{stop}`")))?;
        self.offset += end;
        Ok(rest[..end].trim().to_string())
    }

    pub fn number(&mut self) -> Result<usize> {
        let word = self.ident()?;
        word.parse()
            .map_err(|_| self.error(format!("expected a number, found `{word}`")))
    }

    /// `[1,2]`; `[]` is the root.
    pub fn position(&mut self) -> Result<Position> {
        self.expect("[")?;
        let mut path = Vec::new();
        if !self.eat("]") {
            loop {
                let i = self.number()?;
                if i == 0 {
                    return Err(self.error("position indices start at 1"));
                }
                path.push(i);
                if self.eat("]") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(Position(path))
    }

    /// `{X0 := a, X3 := f(X1)}`.
    pub fn substitution(&mut self, scope: &mut VarScope) -> Result<Substitution> {
        self.expect("{")?;
        let mut sigma = Substitution::new();
        if !self.eat("}") {
            loop {
                let Term::Var(v) = self.term(scope)? else {
                    return Err(self.error("expected a variable"));
                };
                self.expect(":=")?;
                let t = self.term(scope)?;
                if sigma.get(v).is_some() {
                    return Err(self.error(format!("variable X{v} bound twice")));
                }
                sigma.bind(v, t);
                if self.eat("}") {
                    break;
                }
                self.expect(",")?;
            }
        }
        Ok(sigma)
    }

    pub fn equation(&mut self, scope: &mut VarScope) -> Result<Equation> {
        let left = self.term(scope)?;
        self.expect("=")?;
        let right = self.term(scope)?;
        Ok(Equation::new(left, right))
    }

    pub fn term(&mut self, scope: &mut VarScope) -> Result<Term> {
        let name = self.ident()?;
        if is_variable_name(&name) {
            return scope
                .resolve(&name)
                .map(Term::Var)
                .ok_or_else(|| self.error(format!("bad variable name `{name}`")));
        }
        let mut args = Vec::new();
        if self.eat("(") {
            loop {
                args.push(self.term(scope)?);
                if self.eat(",") {
                    continue;
                }
                self.expect(")")?;
                break;
            }
        }
        Ok(Term::App(Symbol::new(name, args.len()), args))
    }
}

fn preview(s: &str) -> String {
    s.chars().take(20).collect()
}
