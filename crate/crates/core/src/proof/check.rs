//! Independent replay of proof lines using only term operations.

use std::fmt;

use super::{Justification, Proof};
use crate::clause::Direction;
use crate::terms::{apart_offset, match_term, Equation, Renamable};

/// The first line that failed to replay (1-based; 0 for the proof as a whole).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for CheckFailure {}

fn fail<T>(line: usize, message: impl Into<String>) -> Result<T, CheckFailure> {
    Err(CheckFailure {
        line,
        message: message.into(),
    })
}

/// Replays every line and checks that the last one is an instance of the goal.
pub fn check(proof: &Proof) -> Result<(), CheckFailure> {
    if proof.lines.is_empty() {
        return fail(0, "empty proof");
    }
    for (i, line) in proof.lines.iter().enumerate() {
        let n = i + 1;
        match &line.justification {
            Justification::Input(_) => {}
            Justification::Resolution { goal, subst } => {
                let inst = goal.apply(subst);
                if inst.left != inst.right {
                    return fail(n, "substitution does not identify the two sides");
                }
                if inst != line.equation {
                    return fail(n, "stated equation is not the resolved instance");
                }
            }
            Justification::Rewrite {
                source,
                by,
                direction,
                position,
                subst,
            } => {
                for r in [source, by] {
                    if *r == 0 || *r >= n {
                        return fail(n, format!("reference to line {r} is not to an earlier line"));
                    }
                }
                let src = &proof.lines[source - 1].equation;
                let eq = proof.lines[by - 1].equation.shift_vars(apart_offset(src));
                let src = src.apply(subst);
                let eq = eq.apply(subst);
                let (found, replacement) = match direction {
                    Direction::LeftToRight => (eq.left, eq.right),
                    Direction::RightToLeft => (eq.right, eq.left),
                };
                let Ok(at) = src.subterm_at(position) else {
                    return fail(n, format!("no subterm at {position}"));
                };
                if *at != found {
                    return fail(n, format!("subterm at {position} is {at}, expected {found}"));
                }
                if found == replacement {
                    return fail(n, "rewrite does not change anything");
                }
                let Ok(result) = src.replace_at(position, replacement) else {
                    return fail(n, format!("no subterm at {position}"));
                };
                if !result.is_variant_of(&line.equation) {
                    return fail(n, format!("rewrite yields {result}, not {}", line.equation));
                }
            }
        }
    }
    let last = &proof.lines.last().expect("nonempty").equation;
    if match_term(&proof.goal.as_term(), &last.as_term()).is_none() {
        return fail(proof.lines.len(), "last line is not an instance of the goal");
    }
    Ok(())
}

/// Checks the proof and that every input line states the named axiom (up to
/// renaming) and the goal is the stated one.
pub fn check_inputs(
    proof: &Proof,
    axioms: &[(String, Equation)],
    goal: &Equation,
) -> Result<(), CheckFailure> {
    if !proof.goal.is_variant_of(goal) {
        return fail(0, "proof is about a different goal");
    }
    for (i, line) in proof.lines.iter().enumerate() {
        if let Justification::Input(name) = &line.justification {
            let Some((_, ax)) = axioms.iter().find(|(n, _)| n == name) else {
                return fail(i + 1, format!("unknown input `{name}`"));
            };
            if !ax.is_variant_of(&line.equation) {
                return fail(i + 1, format!("input `{name}` is stated differently"));
            }
        }
    }
    check(proof)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::ProofLine;
    use crate::terms::{parse_equation, parse_term, Position, Substitution};

    fn e(s: &str) -> Equation {
        parse_equation(s).unwrap()
    }

    fn congruence() -> Proof {
        Proof {
            goal_name: "g".into(),
            goal: e("f(a) = f(b)"),
            lines: vec![
                ProofLine {
                    equation: e("a = b"),
                    justification: Justification::Input("ab".into()),
                },
                ProofLine {
                    equation: e("f(b) = f(b)"),
                    justification: Justification::Resolution {
                        goal: e("f(b) = f(b)"),
                        subst: Substitution::new(),
                    },
                },
                ProofLine {
                    equation: e("f(a) = f(b)"),
                    justification: Justification::Rewrite {
                        source: 2,
                        by: 1,
                        direction: Direction::RightToLeft,
                        position: Position(vec![1, 1]),
                        subst: Substitution::new(),
                    },
                },
            ],
        }
    }

    #[test]
    fn accepts_hand_written_proof() {
        check(&congruence()).unwrap();
        check_inputs(&congruence(), &[("ab".into(), e("a = b"))], &e("f(a) = f(b)")).unwrap();
    }

    #[test]
    fn rejects_wrong_position() {
        let mut p = congruence();
        if let Justification::Rewrite { position, .. } = &mut p.lines[2].justification {
            *position = Position(vec![2, 1]);
        }
        assert_eq!(check(&p).unwrap_err().line, 3);
    }

    #[test]
    fn rejects_wrong_direction() {
        let mut p = congruence();
        if let Justification::Rewrite { direction, .. } = &mut p.lines[2].justification {
            *direction = Direction::LeftToRight;
        }
        assert_eq!(check(&p).unwrap_err().line, 3);
    }

    #[test]
    fn rejects_forward_references_and_wrong_goal() {
        let mut p = congruence();
        if let Justification::Rewrite { source, .. } = &mut p.lines[2].justification {
            *source = 3;
        }
        assert!(check(&p).is_err());
        let mut p = congruence();
        p.goal = e("g(a) = g(b)");
        assert!(check(&p).is_err());
    }

    #[test]
    fn rejects_bad_resolution() {
        let mut p = congruence();
        p.lines[1].justification = Justification::Resolution {
            goal: e("f(X) = f(b)"),
            subst: Substitution::from_pairs([(0, parse_term("c").unwrap())]),
        };
        assert_eq!(check(&p).unwrap_err().line, 2);
    }

    #[test]
    fn rejects_misstated_input() {
        let err = check_inputs(&congruence(), &[("ab".into(), e("a = c"))], &e("f(a) = f(b)"));
        assert_eq!(err.unwrap_err().line, 1);
    }
}
