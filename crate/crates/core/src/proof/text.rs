//! Line-based proof text.
//!
//! ```text
//! goal g: f(a) = f(b)
//! 1: ![]: a = b by input(ab)
//! 2: ![]: f(b) = f(b) by resolution(f(b) = f(b), {})
//! 3: ![]: f(a) = f(b) by rewrite(2, 1, rtl, [1,1], {})
//! ```
//!
//! Variables are written `X<n>` and keep their numbers when read back.

use std::fmt;

use super::{Justification, Proof, ProofLine};
use crate::clause::Direction;
use crate::error::Result;
use crate::terms::{Term, TermParser, VarScope};

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Input(name) => write!(f, "input({name})"),
            Justification::Rewrite {
                source,
                by,
                direction,
                position,
                subst,
            } => write!(
                f,
                "rewrite({source}, {by}, {}, {position}, {subst})",
                direction.tag()
            ),
            Justification::Resolution { goal, subst } => write!(f, "resolution({goal}, {subst})"),
        }
    }
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "goal {}: {}", self.goal_name, self.goal)?;
        for (i, line) in self.lines.iter().enumerate() {
            let vars: Vec<String> = line
                .equation
                .vars_in_order()
                .into_iter()
                .map(|v| Term::Var(v).to_string())
                .collect();
            writeln!(
                f,
                "{}: ![{}]: {} by {}",
                i + 1,
                vars.join(","),
                line.equation,
                line.justification
            )?;
        }
        Ok(())
    }
}

/// Reads the text written by `Display for Proof`. Lines must be numbered
/// consecutively from 1.
pub fn parse_proof(text: &str) -> Result<Proof> {
    let mut p = TermParser::new(text);
    let mut scope = VarScope::Literal;
    p.expect("goal")?;
    let goal_name = p.until(':')?;
    p.expect(":")?;
    let goal = p.equation(&mut scope)?;
    let mut lines = Vec::new();
    while !p.at_end() {
        let n = p.number()?;
        if n != lines.len() + 1 {
            return Err(p.error(format!("expected line {}, found {n}", lines.len() + 1)));
        }
        p.expect(":")?;
        p.expect("!")?;
        p.expect("[")?;
        while !p.eat("]") {
            let _ = p.term(&mut scope)?;
            p.eat(",");
        }
        p.expect(":")?;
        let equation = p.equation(&mut scope)?;
        p.expect("by")?;
        let tag = p.ident()?;
        p.expect("(")?;
        let justification = match tag.as_str() {
            "input" => Justification::Input(p.until(')')?),
            "rewrite" => {
                let source = p.number()?;
                p.expect(",")?;
                let by = p.number()?;
                p.expect(",")?;
                let direction = Direction::parse(&mut p)?;
                p.expect(",")?;
                let position = p.position()?;
                p.expect(",")?;
                let subst = p.substitution(&mut scope)?;
                Justification::Rewrite {
                    source,
                    by,
                    direction,
                    position,
                    subst,
                }
            }
            "resolution" => {
                let goal = p.equation(&mut scope)?;
                p.expect(",")?;
                let subst = p.substitution(&mut scope)?;
                Justification::Resolution { goal, subst }
            }
            other => return Err(p.error(format!("unknown justification `{other}`"))),
        };
        p.expect(")")?;
        lines.push(ProofLine {
            equation,
            justification,
        });
    }
    Ok(Proof {
        goal_name,
        goal,
        lines,
    })
}
