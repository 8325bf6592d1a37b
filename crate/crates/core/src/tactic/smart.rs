use std::collections::{BTreeMap, BTreeSet};

use super::EquationSet;
use crate::calculus::{equality_resolution, superpose_left};
use crate::clause::{ClauseId, Conclusion, ProofStep, Sign};
use crate::proof::{reconstruct, Proof};
use crate::terms::{apart_offset, Equation, Renamable, Substitution, Term, Var};

/// A successful match of a lemma conclusion against a goal.
#[derive(Debug, Clone)]
pub struct SmartMatch {
    /// Bindings for goal and (renamed) lemma variables.
    pub subst: Substitution,
    /// The lemma's hypotheses under `subst`.
    pub subgoals: Vec<Term>,
    /// Rewrites turning the instantiated conclusion into the instantiated
    /// goal, as a checkable proof of `conclusion = goal`.
    pub chain: Proof,
    /// Narrowing rounds used.
    pub rounds: usize,
}

/// Matches `conclusion` against `goal` with at most `budget` rounds of
/// narrowing; lemma variables are renamed above those of `goal`.
pub fn smart_apply(
    goal: &Term,
    hypotheses: &[Term],
    conclusion: &Term,
    eqs: &EquationSet,
    budget: usize,
) -> Option<SmartMatch> {
    let mut fresh = apart_offset(goal);
    smart_apply_with(goal, hypotheses, conclusion, eqs, budget, &mut fresh)
}

fn term_max(ts: &[Term]) -> Option<Var> {
    ts.iter().filter_map(Term::max_var).max()
}

/// Like [`smart_apply`], with lemma variables and any variables left open by
/// the match allocated from `fresh`, which must exceed every variable in use.
pub fn smart_apply_with(
    goal: &Term,
    hypotheses: &[Term],
    conclusion: &Term,
    eqs: &EquationSet,
    budget: usize,
    fresh: &mut Var,
) -> Option<SmartMatch> {
    let base = *fresh;
    let concl = conclusion.shift_vars(base);
    let hyps: Vec<Term> = hypotheses.iter().map(|h| h.shift_vars(base)).collect();
    if let Some(m) = concl.max_var().max(term_max(&hyps)) {
        *fresh = (*fresh).max(m + 1);
    }

    let start = Equation::new(concl, goal.clone());
    let ord = eqs.ordering();
    let mut bag = eqs.bag().clone();
    let root = bag
        .insert(Conclusion {
            sign: Sign::Negative,
            equation: start.clone(),
            step: ProofStep::Input("match".into()),
        })
        .ok()?;
    let mut seen: BTreeSet<Equation> = BTreeSet::new();
    seen.insert(bag.clause(root).ok()?.equation.clone());
    let mut frontier: Vec<ClauseId> = vec![root];

    for round in 0..=budget {
        // Of the goals closing in this round, keep the smallest answer.
        let mut best: Option<(usize, SmartMatch, Var)> = None;
        for &g in &frontier {
            let Some(empty) = equality_resolution(bag.clause(g).ok()?) else {
                continue;
            };
            let e = bag.insert(empty).ok()?;
            let chain = reconstruct(&bag, e).ok()?;
            let mut next_fresh = *fresh;
            let subst = lift_answer(&start, &chain.answer()?, &mut next_fresh);
            let size = subst.iter().map(|(_, t)| t.size()).sum::<usize>();
            if best.as_ref().is_none_or(|(s, _, _)| size < *s) {
                let subgoals = hyps.iter().map(|h| subst.apply(h)).collect();
                let m = SmartMatch {
                    subst,
                    subgoals,
                    chain,
                    rounds: round,
                };
                best = Some((size, m, next_fresh));
            }
        }
        if let Some((_, m, next_fresh)) = best {
            *fresh = next_fresh;
            return Some(m);
        }
        if round == budget {
            break;
        }
        let mut next = Vec::new();
        for &g in &frontier {
            for &f in eqs.active() {
                let (fact, goal_clause) = (bag.clause(f).ok()?, bag.clause(g).ok()?);
                for c in superpose_left(fact, goal_clause, ord) {
                    if seen.insert(c.equation.normalized()) {
                        next.push(c);
                    }
                }
            }
        }
        frontier = next
            .into_iter()
            .map(|c| bag.insert(c))
            .collect::<Result<_, _>>()
            .ok()?;
        if frontier.is_empty() {
            break;
        }
    }
    None
}

/// Translates an answer over the normalized variables of `start` back to
/// the variables of `start`, allocating fresh variables for open ones.
fn lift_answer(start: &Equation, answer: &Substitution, fresh: &mut Var) -> Substitution {
    let order = start.vars_in_order();
    let images: Vec<Term> = (0..order.len())
        .map(|i| answer.apply(&Term::Var(i as Var)))
        .collect();
    // An open variable keeps the name of the first original variable bound to it.
    let mut rename: BTreeMap<Var, Var> = BTreeMap::new();
    for (v, img) in order.iter().zip(&images) {
        if let Term::Var(w) = img {
            rename.entry(*w).or_insert(*v);
        }
    }
    for img in &images {
        for w in img.vars_in_order() {
            rename.entry(w).or_insert_with(|| {
                *fresh += 1;
                *fresh - 1
            });
        }
    }
    let mut out = Substitution::new();
    for (v, img) in order.iter().zip(&images) {
        out.bind(*v, img.map_vars(&|w| Term::Var(rename[&w])));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::check;
    use crate::tactic::{parse_theory, Entry, Theory};
    use crate::terms::parse_term;

    fn lemma(th: &Theory, name: &str) -> (Vec<Term>, Term) {
        match th.entry(name).unwrap() {
            Entry::Lemma {
                hypotheses,
                conclusion,
                ..
            } => (hypotheses.clone(), conclusion.clone()),
            _ => panic!("not a lemma"),
        }
    }

    fn pred_theory() -> Theory {
        parse_theory(
            "equation pred_s: pred(s(X)) = X.\n\
             lemma monotonic_pred: le(N,M) -> le(pred(N),pred(M)).\n",
        )
        .unwrap()
    }

    #[test]
    fn monotonic_pred_needs_two_rounds() {
        let th = pred_theory();
        let eqs = EquationSet::load(&th, &[]).unwrap();
        let (hyps, concl) = lemma(&th, "monotonic_pred");
        let goal = parse_term("le(n,m)").unwrap();
        for budget in 0..2 {
            assert!(smart_apply(&goal, &hyps, &concl, &eqs, budget).is_none());
        }
        let m = smart_apply(&goal, &hyps, &concl, &eqs, 2).unwrap();
        assert_eq!(m.subgoals, [parse_term("le(s(n),s(m))").unwrap()]);
        assert_eq!(m.rounds, 2);
        check(&m.chain).unwrap();
        assert!(smart_apply(&goal, &hyps, &concl, &eqs, 3).is_some());
    }

    #[test]
    fn syntactic_match_needs_no_narrowing() {
        let th = pred_theory();
        let eqs = EquationSet::load(&th, &[]).unwrap();
        let (hyps, concl) = lemma(&th, "monotonic_pred");
        let goal = parse_term("le(pred(a),pred(b))").unwrap();
        let m = smart_apply(&goal, &hyps, &concl, &eqs, 0).unwrap();
        assert_eq!(m.rounds, 0);
        assert_eq!(m.chain.rewrite_count(), 0);
        assert_eq!(m.subgoals, [parse_term("le(a,b)").unwrap()]);
    }

    #[test]
    fn goal_variables_are_bound_in_the_answer() {
        let th = pred_theory();
        let eqs = EquationSet::load(&th, &[]).unwrap();
        let (hyps, concl) = lemma(&th, "monotonic_pred");
        let goal = Term::app("le", vec![Term::Var(0), parse_term("m").unwrap()]);
        let m = smart_apply(&goal, &hyps, &concl, &eqs, 2).unwrap();
        assert_eq!(m.rounds, 1);
        let Term::App(_, args) = &m.subgoals[0] else {
            panic!("atom expected");
        };
        assert_eq!(args[1], parse_term("s(m)").unwrap());
        assert_eq!(m.subst.apply(&goal), Term::app("le", vec![Term::app("pred", vec![args[0].clone()]), parse_term("m").unwrap()]));
        check(&m.chain).unwrap();
    }
}
