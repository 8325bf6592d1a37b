//! Theory files.
//!
//! ```text
//! equation pred_s: pred(s(X)) = X.
//! lemma monotonic_pred: le(N,M) -> le(pred(N),pred(M)).
//! assume h: le(s(n),s(m)).
//! goal g: le(n,m).
//! ```
//!
//! Each directive has its own variable scope. `%` starts a comment.

use std::collections::BTreeSet;
use std::path::Path;

use super::{Entry, Theory};
use crate::error::{Error, Result};
use crate::terms::{Term, TermParser, VarScope};

pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut p = TermParser::new(text);
    let mut theory = Theory::default();
    let mut names = BTreeSet::new();
    while !p.at_end() {
        let keyword = p.ident()?;
        let name = p.until(':')?;
        if name.is_empty() {
            return Err(p.error("missing name"));
        }
        if !names.insert(name.clone()) {
            return Err(Error::DuplicateName(name));
        }
        p.expect(":")?;
        let mut scope = VarScope::fresh();
        match keyword.as_str() {
            "equation" => {
                let equation = p.equation(&mut scope)?;
                theory.entries.push(Entry::Equation { name, equation });
            }
            "lemma" => {
                let mut atoms = vec![atom(&mut p, &mut scope)?];
                while p.eat("->") {
                    atoms.push(atom(&mut p, &mut scope)?);
                }
                let conclusion = atoms.pop().expect("at least one atom");
                theory.entries.push(Entry::Lemma {
                    name,
                    hypotheses: atoms,
                    conclusion,
                });
            }
            "assume" => {
                let a = atom(&mut p, &mut scope)?;
                theory.assumptions.push((name, a));
            }
            "goal" => {
                let mut atoms = vec![atom(&mut p, &mut scope)?];
                while p.eat(",") {
                    atoms.push(atom(&mut p, &mut scope)?);
                }
                theory.goals.push((name, atoms));
            }
            other => return Err(p.error(format!("unknown directive `{other}`"))),
        }
        p.expect(".")?;
    }
    Ok(theory)
}

fn atom(p: &mut TermParser, scope: &mut VarScope) -> Result<Term> {
    let t = p.term(scope)?;
    if t.is_var() {
        return Err(p.error("an atom cannot be a variable"));
    }
    Ok(t)
}

pub fn read_theory(path: &Path) -> Result<Theory> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_theory(&text)
}

/// One name per line; blank lines and `%` comments are ignored.
pub fn parse_trace(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(|l| l.split('%').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect()
}

pub fn format_trace(trace: &BTreeSet<String>) -> String {
    trace.iter().map(|n| format!("{n}\n")).collect()
}
