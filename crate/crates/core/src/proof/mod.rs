//! Proof objects: reconstruction from a refutation, checking, text form.
//!
//! A proof is a list of equations, each an input, a rewrite of an earlier
//! line by another earlier line, or a reflexivity instance. Facts derived
//! by forward steps appear first, in derivation order. Goal rewrites are
//! replayed backwards: starting from the reflexive instance closed by
//! equality resolution, each step is undone with the flipped equation, so
//! the last line is an instance of the original goal.

mod check;
mod text;

use std::collections::{BTreeMap, BTreeSet};

use crate::clause::{ClauseBag, ClauseId, Direction, ProofStep};
use crate::error::{Error, Result};
use crate::terms::{
    apart_offset, compose, match_term, Equation, Position, Renamable, Substitution, Term, Var,
};

pub use check::{check, check_inputs, CheckFailure};
pub use text::parse_proof;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Input(String),
    /// Line `source` instantiated and rewritten at `position` with line `by`
    /// renamed apart from `source`. Line numbers start at 1.
    Rewrite {
        source: usize,
        by: usize,
        direction: Direction,
        position: Position,
        subst: Substitution,
    },
    /// Both sides of `goal` made identical by `subst`.
    Resolution { goal: Equation, subst: Substitution },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub equation: Equation,
    pub justification: Justification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Proof {
    pub goal_name: String,
    /// The goal as stated in the input.
    pub goal: Equation,
    pub lines: Vec<ProofLine>,
}

impl Proof {
    /// Names of the input lines, in line order without repetition.
    pub fn inputs_used(&self) -> Vec<String> {
        let mut seen = BTreeSet::new();
        self.lines
            .iter()
            .filter_map(|l| match &l.justification {
                Justification::Input(n) if seen.insert(n.clone()) => Some(n.clone()),
                _ => None,
            })
            .collect()
    }

    /// The goal instance proved by the last line.
    pub fn answer(&self) -> Option<Substitution> {
        let last = self.lines.last()?;
        match_term(&self.goal.as_term(), &last.equation.as_term())
    }

    /// Number of rewrite lines.
    pub fn rewrite_count(&self) -> usize {
        self.lines
            .iter()
            .filter(|l| matches!(l.justification, Justification::Rewrite { .. }))
            .count()
    }
}

struct SpineStep {
    goal: ClauseId,
    fact: ClauseId,
    direction: Direction,
    position: Position,
    subst: Substitution,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedBag(msg.into())
}

/// Builds a proof from the empty clause `empty` of a refutation in `bag`.
pub fn reconstruct(bag: &ClauseBag, empty: ClauseId) -> Result<Proof> {
    let ProofStep::EqualityResolution { parent, subst: res_subst } = &bag.clause(empty)?.step
    else {
        return Err(malformed(format!("clause {empty} is not an empty clause")));
    };

    // Walk the goal chain back to its input.
    let mut spine = Vec::new();
    let mut cur = *parent;
    let goal_name = loop {
        let g = bag.clause(cur)?;
        if !g.is_goal() {
            return Err(malformed(format!("clause {cur} on the goal chain is not a goal")));
        }
        match &g.step {
            ProofStep::Input(name) => break name.clone(),
            ProofStep::Step {
                parent1,
                parent2,
                direction,
                position,
                subst,
                ..
            } => {
                spine.push(SpineStep {
                    goal: *parent1,
                    fact: *parent2,
                    direction: *direction,
                    position: position.clone(),
                    subst: subst.clone(),
                });
                cur = *parent1;
            }
            ProofStep::EqualityResolution { .. } => {
                return Err(malformed(format!("clause {cur} resolves twice")))
            }
        }
    };
    let goal = bag.clause(cur)?.equation.clone();

    // Facts used on the spine and everything they depend on.
    let mut facts = BTreeSet::new();
    for step in &spine {
        facts.extend(bag.ancestors(step.fact)?);
    }

    let mut lines = Vec::new();
    let mut line_of: BTreeMap<ClauseId, usize> = BTreeMap::new();
    for id in facts {
        let c = bag.clause(id)?;
        if !c.is_positive() {
            return Err(malformed(format!("fact derivation uses goal {id}")));
        }
        let justification = match &c.step {
            ProofStep::Input(name) => Justification::Input(name.clone()),
            ProofStep::Step {
                parent1,
                parent2,
                direction,
                position,
                subst,
                ..
            } => Justification::Rewrite {
                source: line_of[parent1],
                by: line_of[parent2],
                direction: *direction,
                position: position.clone(),
                subst: subst.clone(),
            },
            ProofStep::EqualityResolution { .. } => {
                return Err(malformed(format!("fact {id} derived by resolution")))
            }
        };
        lines.push(ProofLine {
            equation: c.equation.clone(),
            justification,
        });
        line_of.insert(id, lines.len());
    }

    // The reflexive instance closing the last goal.
    let last_goal = bag.clause(*parent)?;
    let mut instance = last_goal.equation.apply(res_subst);
    if instance.left != instance.right {
        return Err(malformed("resolution substitution does not unify"));
    }
    lines.push(ProofLine {
        equation: instance.clone(),
        justification: Justification::Resolution {
            goal: last_goal.equation.clone(),
            subst: res_subst.clone(),
        },
    });
    // `mu` maps the current goal's variables into `instance`.
    let mut mu = res_subst.restrict(|v| last_goal.equation.vars_in_order().contains(&v));
    let mut fresh: Var = bag
        .iter()
        .filter_map(|c| c.equation.max_var())
        .chain(instance.max_var())
        .max()
        .map_or(0, |m| m + 1);

    let mut child = *parent;
    for step in &spine {
        let g = bag.clause(step.goal)?;
        let fact = bag.clause(step.fact)?;
        let shift = apart_offset(&g.equation);
        let from = fact.equation.shift_vars(shift);
        let (l, r) = match step.direction {
            Direction::LeftToRight => (&from.left, &from.right),
            Direction::RightToLeft => (&from.right, &from.left),
        };
        let raw = g
            .equation
            .apply(&step.subst)
            .replace_at(&step.position, step.subst.apply(r))?;
        if raw.normalized() != bag.clause(child)?.equation {
            return Err(malformed(format!("step to clause {child} does not replay")));
        }
        // rho renames `raw` to the stored child clause; compose with mu.
        let order = raw.vars_in_order();
        let offset = apart_offset(&instance);
        fresh = fresh.max(offset + fact.equation.max_var().map_or(0, |m| m + 1));
        let mut rho_mu = Substitution::new();
        for (i, v) in order.iter().enumerate() {
            let image = mu.apply(&Term::Var(i as Var));
            rho_mu.bind(*v, image);
        }
        let mut vanished = BTreeSet::new();
        for t in [&g.equation.apply(&step.subst), &from.apply(&step.subst)] {
            t.left.for_each_var(&mut |v| {
                if !order.contains(&v) {
                    vanished.insert(v);
                }
            });
            t.right.for_each_var(&mut |v| {
                if !order.contains(&v) {
                    vanished.insert(v);
                }
            });
        }
        for v in vanished {
            rho_mu.bind(v, Term::Var(fresh));
            fresh += 1;
        }
        let tau = compose(&step.subst, &rho_mu);
        let (lt, rt) = (tau.apply(l), tau.apply(r));
        let prev = g.equation.apply(&tau);
        if lt != rt {
            // Fact variables in the checker's namespace for `instance`.
            let mut line_subst = Substitution::new();
            for v in fact.equation.vars_in_order() {
                line_subst.bind(v + offset, tau.apply(&Term::Var(v + shift)));
            }
            lines.push(ProofLine {
                equation: prev.clone(),
                justification: Justification::Rewrite {
                    source: lines.len(),
                    by: line_of[&step.fact],
                    direction: step.direction.flip(),
                    position: step.position.clone(),
                    subst: line_subst,
                },
            });
        }
        let goal_vars = g.equation.vars_in_order();
        mu = tau.restrict(|v| goal_vars.contains(&v));
        instance = prev;
        child = step.goal;
    }

    Ok(Proof {
        goal_name,
        goal,
        lines,
    })
}
