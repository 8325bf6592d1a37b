//! Superposition, equality resolution, demodulation and subsumption.
//!
//! In every two-premise step the equation applied (`from`) is renamed apart
//! from the clause it rewrites (`into`); the recorded substitution ranges
//! over both namespaces.

use std::collections::BTreeSet;

use crate::clause::{
    is_tautology, subsumes, ClauseBag, ClauseId, Conclusion, Direction, ProofStep, Rule, Sign,
    UnitClause,
};
use crate::error::{Error, Result};
use crate::index::DiscriminationTree;
use crate::ordering::{Comparison, TermOrdering};
use crate::terms::{match_term, rename_apart, unify, Equation, Position, Term};

pub const DEFAULT_DEMOD_LIMIT: usize = 10_000;

fn not_le(ord: &dyn TermOrdering, s: &Term, t: &Term) -> bool {
    !ord.compare(s, t).is_less_or_equal()
}

/// Clause-level non-variable positions of an equation.
pub fn equation_positions(eq: &Equation) -> Vec<Position> {
    let mut out = Vec::new();
    for (side, term) in [(1, &eq.left), (2, &eq.right)] {
        out.extend(term.nonvar_positions().into_iter().map(|p| p.prepend(side)));
    }
    out
}

/// All rewrites of `into` by `from` at non-variable positions of `into`,
/// in either direction of `from`, subject to the ordering conditions.
pub fn superpose_into(
    into: &UnitClause,
    from: &UnitClause,
    rule: Rule,
    ord: &dyn TermOrdering,
) -> Vec<Conclusion> {
    let from_eq = rename_apart(&from.equation, &into.equation);
    let positions = equation_positions(&into.equation);
    let mut out = Vec::new();
    for direction in [Direction::LeftToRight, Direction::RightToLeft] {
        let (l, r) = direction.sides(&from_eq);
        for pos in &positions {
            out.extend(superpose_at(into, from, rule, ord, direction, (l, r), pos));
        }
    }
    out
}

/// One superposition attempt at a given clause-level position.
pub fn superpose_at(
    into: &UnitClause,
    from: &UnitClause,
    rule: Rule,
    ord: &dyn TermOrdering,
    direction: Direction,
    (l, r): (&Term, &Term),
    pos: &Position,
) -> Option<Conclusion> {
    let target = into.equation.subterm_at(pos).ok()?;
    if target.is_var() {
        return None;
    }
    let sigma = unify(l, target)?;
    let (ls, rs) = (sigma.apply(l), sigma.apply(r));
    if !not_le(ord, &ls, &rs) {
        return None;
    }
    let (side, _) = pos.split_first()?;
    let inst = into.equation.apply(&sigma);
    let (t1, t2) = if side == 1 {
        (&inst.left, &inst.right)
    } else {
        (&inst.right, &inst.left)
    };
    if !not_le(ord, t1, t2) {
        return None;
    }
    let equation = inst.replace_at(pos, rs).ok()?;
    Some(Conclusion {
        sign: into.sign,
        equation,
        step: ProofStep::Step {
            rule,
            parent1: into.id,
            parent2: from.id,
            direction,
            position: pos.clone(),
            subst: sigma,
        },
    })
}

/// Superposition between two facts, each premise in both roles.
pub fn superpose_right(fact1: &UnitClause, fact2: &UnitClause, ord: &dyn TermOrdering) -> Vec<Conclusion> {
    debug_assert!(fact1.is_positive() && fact2.is_positive());
    let mut out = superpose_into(fact2, fact1, Rule::SuperpositionRight, ord);
    if fact1.id != fact2.id {
        out.extend(superpose_into(fact1, fact2, Rule::SuperpositionRight, ord));
    }
    out
}

/// Rewrites a goal with a fact.
pub fn superpose_left(fact: &UnitClause, goal: &UnitClause, ord: &dyn TermOrdering) -> Vec<Conclusion> {
    debug_assert!(fact.is_positive() && goal.is_goal());
    superpose_into(goal, fact, Rule::SuperpositionLeft, ord)
}

/// Closes a goal whose sides unify; the conclusion is the empty clause.
pub fn equality_resolution(goal: &UnitClause) -> Option<Conclusion> {
    if !goal.is_goal() || goal.is_empty_clause() {
        return None;
    }
    let sigma = unify(goal.left(), goal.right())?;
    Some(Conclusion {
        sign: Sign::Negative,
        equation: goal.equation.apply(&sigma),
        step: ProofStep::EqualityResolution {
            parent: goal.id,
            subst: sigma,
        },
    })
}

/// Why `simplify` discarded a clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DropReason {
    Tautology,
    Subsumed(ClauseId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Simplified {
    Keep(ClauseId),
    Drop(DropReason),
}

/// Active clauses indexed for rewriting and subsumption.
///
/// Only equations that the ordering orients serve as demodulators.
#[derive(Debug, Clone, Default)]
pub struct SimplificationIndex {
    demodulators: DiscriminationTree<(ClauseId, Direction)>,
    facts: DiscriminationTree<ClauseId>,
    goals: DiscriminationTree<ClauseId>,
}

impl SimplificationIndex {
    pub fn new() -> Self {
        Self::default()
    }

    fn orientation(c: &UnitClause, ord: &dyn TermOrdering) -> Option<Direction> {
        if !c.is_positive() {
            return None;
        }
        match ord.compare(c.left(), c.right()) {
            Comparison::Greater => Some(Direction::LeftToRight),
            Comparison::Less => Some(Direction::RightToLeft),
            _ => None,
        }
    }

    pub fn add(&mut self, c: &UnitClause, ord: &dyn TermOrdering) {
        if let Some(dir) = Self::orientation(c, ord) {
            let (l, _) = dir.sides(&c.equation);
            self.demodulators.insert(l.clone(), (c.id, dir));
        }
        let tree = if c.is_positive() { &mut self.facts } else { &mut self.goals };
        tree.insert(c.left().clone(), c.id);
    }

    pub fn remove(&mut self, c: &UnitClause, ord: &dyn TermOrdering) -> Result<()> {
        if let Some(dir) = Self::orientation(c, ord) {
            let (l, _) = dir.sides(&c.equation);
            self.demodulators.remove(l, &(c.id, dir))?;
        }
        let tree = if c.is_positive() { &mut self.facts } else { &mut self.goals };
        tree.remove(c.left(), &c.id)
    }

    pub fn demodulator_candidates(&self, t: &Term) -> Vec<(ClauseId, Direction)> {
        let mut v: Vec<_> = self
            .demodulators
            .retrieve_generalizations(t)
            .into_iter()
            .map(|(_, p)| *p)
            .collect();
        v.sort_by_key(|(id, _)| *id);
        v
    }

    /// Clauses whose left side may generalize either side of `c`.
    pub fn subsumer_candidates(&self, c: &UnitClause) -> BTreeSet<ClauseId> {
        let tree = if c.is_positive() { &self.facts } else { &self.goals };
        [c.left(), c.right()]
            .into_iter()
            .flat_map(|side| tree.retrieve_generalizations(side))
            .map(|(_, id)| *id)
            .collect()
    }

    pub fn demodulator_count(&self) -> usize {
        self.demodulators.len()
    }
}

/// Rewrites clause `id` to normal form, leftmost-innermost, registering each
/// intermediate clause in the bag. Returns the final id (`id` itself if no
/// rule applied). Clause `skip` is never used as a demodulator.
pub fn demodulate(
    bag: &mut ClauseBag,
    id: ClauseId,
    index: &SimplificationIndex,
    ord: &dyn TermOrdering,
    limit: usize,
    skip: Option<ClauseId>,
) -> Result<ClauseId> {
    let mut current = id;
    let mut steps = 0;
    loop {
        let c = bag.clause(current)?;
        if c.is_empty_clause() {
            return Ok(current);
        }
        let Some(conclusion) = rewrite_once(bag, c, index, ord, skip)? else {
            return Ok(current);
        };
        steps += 1;
        if steps > limit {
            return Err(Error::StepLimit(limit));
        }
        current = bag.insert(conclusion)?;
    }
}

fn rewrite_once(
    bag: &ClauseBag,
    c: &UnitClause,
    index: &SimplificationIndex,
    ord: &dyn TermOrdering,
    skip: Option<ClauseId>,
) -> Result<Option<Conclusion>> {
    for (side, term) in [(1, c.left()), (2, c.right())] {
        for pos in term.postorder_positions() {
            let target = term.subterm_at(&pos)?;
            if target.is_var() {
                continue;
            }
            for (did, dir) in index.demodulator_candidates(target) {
                if Some(did) == skip || did == c.id {
                    continue;
                }
                let d = bag.clause(did)?;
                let from = rename_apart(&d.equation, &c.equation);
                let (l, r) = dir.sides(&from);
                let Some(theta) = match_term(l, target) else {
                    continue;
                };
                let rs = theta.apply(r);
                if ord.compare(target, &rs) != Comparison::Greater {
                    continue;
                }
                let position = pos.prepend(side);
                let equation = c.equation.replace_at(&position, rs)?;
                return Ok(Some(Conclusion {
                    sign: c.sign,
                    equation,
                    step: ProofStep::Step {
                        rule: Rule::Demodulation,
                        parent1: c.id,
                        parent2: did,
                        direction: dir,
                        position,
                        subst: theta,
                    },
                }));
            }
        }
    }
    Ok(None)
}

/// Demodulate, then drop tautologies and clauses subsumed by the index.
pub fn simplify(
    bag: &mut ClauseBag,
    id: ClauseId,
    index: &SimplificationIndex,
    ord: &dyn TermOrdering,
    limit: usize,
    skip: Option<ClauseId>,
) -> Result<Simplified> {
    let id = demodulate(bag, id, index, ord, limit, skip)?;
    let c = bag.clause(id)?;
    if is_tautology(c) {
        return Ok(Simplified::Drop(DropReason::Tautology));
    }
    for cand in index.subsumer_candidates(c) {
        if Some(cand) == skip || cand == id {
            continue;
        }
        if subsumes(bag.clause(cand)?, c).is_some() {
            return Ok(Simplified::Drop(DropReason::Subsumed(cand)));
        }
    }
    Ok(Simplified::Keep(id))
}
