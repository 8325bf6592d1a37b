//! The unit-equality fragment of TPTP CNF.
//!
//! ```text
//! cnf(assoc, axiom, mult(mult(X,Y),Z) = mult(X,mult(Y,Z))).
//! cnf(goal, negated_conjecture, mult(a,inv(a)) != e).
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::terms::{Equation, TermParser, VarScope};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub name: String,
    /// Positive unit equations.
    pub axioms: Vec<(String, Equation)>,
    /// Negated conjectures, stored as the equations to refute.
    pub conjectures: Vec<(String, Equation)>,
}

impl Problem {
    pub fn equations(&self) -> impl Iterator<Item = &Equation> {
        self.axioms.iter().chain(&self.conjectures).map(|(_, e)| e)
    }
}

pub fn parse_tptp(name: &str, text: &str) -> Result<Problem> {
    let mut p = TermParser::new(text);
    let mut problem = Problem {
        name: name.to_string(),
        axioms: Vec::new(),
        conjectures: Vec::new(),
    };
    while !p.at_end() {
        let kind = p.ident()?;
        match kind.as_str() {
            "cnf" => {}
            "fof" | "tff" | "thf" | "tcf" => return Err(p.unsupported(format!("{kind} formulas"))),
            "include" => return Err(p.unsupported("include directives")),
            other => return Err(p.error(format!("unknown formula kind `{other}`"))),
        }
        p.expect("(")?;
        let clause_name = p.ident()?;
        p.expect(",")?;
        let role = p.ident()?;
        p.expect(",")?;
        let wrapped = p.eat("(");
        if p.peek("~") {
            return Err(p.unsupported("non-equational literals"));
        }
        let mut scope = VarScope::fresh();
        let left = p.term(&mut scope)?;
        let negative = if p.eat("!=") {
            true
        } else if p.eat("=") {
            false
        } else if p.peek("|") || p.peek(")") {
            return Err(p.unsupported("non-equational literals"));
        } else {
            return Err(p.error("expected `=` or `!=`"));
        };
        let right = p.term(&mut scope)?;
        if p.peek("|") {
            return Err(p.unsupported("non-unit clauses"));
        }
        if wrapped {
            p.expect(")")?;
        }
        p.expect(")")?;
        p.expect(".")?;
        let eq = Equation::new(left, right);
        match (role.as_str(), negative) {
            ("axiom" | "hypothesis", false) => problem.axioms.push((clause_name, eq)),
            ("negated_conjecture", true) => problem.conjectures.push((clause_name, eq)),
            ("axiom" | "hypothesis", true) => {
                return Err(p.unsupported("negative literals outside negated_conjecture"))
            }
            ("negated_conjecture", false) => {
                return Err(p.unsupported("positive negated_conjecture clauses"))
            }
            (other, _) => return Err(p.unsupported(format!("role `{other}`"))),
        }
    }
    check_arities(problem.equations())?;
    Ok(problem)
}

pub fn read_tptp(path: &Path) -> Result<Problem> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map_or_else(|| "problem".to_string(), |s| s.to_string_lossy().into_owned());
    parse_tptp(&name, &text)
}

/// Every symbol name must be used with a single arity.
pub fn check_arities<'a>(eqs: impl IntoIterator<Item = &'a Equation>) -> Result<()> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let mut clash = None;
    for eq in eqs {
        for t in [&eq.left, &eq.right] {
            t.for_each_symbol(&mut |s| {
                let first = *seen.entry(s.name().to_string()).or_insert(s.arity());
                if first != s.arity() && clash.is_none() {
                    clash = Some(Error::ArityClash {
                        name: s.name().to_string(),
                        first,
                        second: s.arity(),
                    });
                }
            });
        }
    }
    clash.map_or(Ok(()), Err)
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, eq) in &self.axioms {
            writeln!(f, "cnf({name}, axiom, {} = {}).", eq.left, eq.right)?;
        }
        for (name, eq) in &self.conjectures {
            writeln!(f, "cnf({name}, negated_conjecture, {} != {}).", eq.left, eq.right)?;
        }
        Ok(())
    }
}
