//! Depth-first backward search over lemmas.

use std::collections::BTreeSet;
use std::fmt;

use super::smart::smart_apply_with;
use super::{Entry, EquationSet, SearchConfig, Theory};
use crate::error::{Error, Result};
use crate::proof::Proof;
use crate::saturation::symbols_of;
use crate::terms::{compose, match_term, Equation, Substitution, Symbol, Term, Var};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeKind {
    Assumption,
    /// A lemma without hypotheses.
    Fact,
    Lemma,
}

#[derive(Debug, Clone)]
pub struct ProofTree {
    /// The goal, instantiated by the final answer.
    pub goal: Term,
    pub by: String,
    pub kind: NodeKind,
    /// The bindings made by this step's match.
    pub subst: Substitution,
    /// Rewrites from the lemma's conclusion to the goal.
    pub chain: Proof,
    pub children: Vec<ProofTree>,
}

impl ProofTree {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(ProofTree::size).sum::<usize>()
    }

    fn instantiate(&mut self, answer: &Substitution) {
        self.goal = answer.apply(&self.goal);
        for c in &mut self.children {
            c.instantiate(answer);
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        let rewrites = self.chain.rewrite_count();
        write!(f, "{:indent$}{} by {}", "", self.goal, self.by)?;
        if rewrites > 0 {
            write!(f, " (modulo {rewrites} rewrites)")?;
        }
        writeln!(f)?;
        for c in &self.children {
            c.write(f, indent + 2)?;
        }
        Ok(())
    }
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    /// One tree per input goal, in input order.
    pub trees: Vec<ProofTree>,
    /// Bindings for the goals' variables.
    pub answer: Substitution,
    pub trace: BTreeSet<String>,
    /// Number of smart applications attempted.
    pub applications: usize,
}

/// Groups goal indices into minimal sets closed under shared variables,
/// ordered by their first member.
pub fn cluster(goals: &[Term]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..goals.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let vars: Vec<BTreeSet<Var>> = goals.iter().map(|g| g.vars().into_iter().collect()).collect();
    for i in 0..goals.len() {
        for j in 0..i {
            if !vars[i].is_disjoint(&vars[j]) {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; goals.len()];
    for i in 0..goals.len() {
        let r = root(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = out.len();
            out.push(Vec::new());
        }
        out[slot[r]].push(i);
    }
    out
}

/// True when some goal in `history` has `new` as an instance.
pub fn loop_detect(history: &[Term], new: &Term) -> bool {
    history.iter().any(|h| match_term(h, new).is_some())
}

/// Names of the lemmas with hypotheses used anywhere in `trees`.
pub fn extract_trace(trees: &[ProofTree], theory: &Theory) -> Result<BTreeSet<String>> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<&ProofTree> = trees.iter().collect();
    while let Some(t) = stack.pop() {
        stack.extend(&t.children);
        if t.kind == NodeKind::Assumption {
            continue;
        }
        match theory.entry(&t.by) {
            Some(e) if e.is_fact() => {}
            Some(Entry::Lemma { .. }) => {
                out.insert(t.by.clone());
            }
            _ => return Err(Error::UnknownName(t.by.clone())),
        }
    }
    Ok(out)
}

/// Searches for proofs of all `goals` together. Uses `config.trace` when set.
pub fn auto(theory: &Theory, goals: &[Term], config: &SearchConfig) -> Result<Option<SearchOutcome>> {
    config.validate(theory)?;
    let atoms: Vec<Equation> = goals.iter().map(|g| Equation::new(g.clone(), g.clone())).collect();
    let extra: Vec<Symbol> = symbols_of(&atoms);
    let eqs = EquationSet::load(theory, &extra)?;
    let fresh = goals.iter().filter_map(Term::max_var).max().map_or(0, |m| m + 1);
    let mut search = Search {
        theory,
        eqs: &eqs,
        config,
        fresh,
        applications: 0,
    };
    let pending = goals
        .iter()
        .map(|g| Pending {
            goal: g.clone(),
            depth: config.max_depth,
            ancestors: Vec::new(),
        })
        .collect();
    let Some((answer, mut trees)) = search.solve_all(pending) else {
        return Ok(None);
    };
    for t in &mut trees {
        t.instantiate(&answer);
    }
    let goal_vars: BTreeSet<Var> = goals.iter().flat_map(Term::vars).collect();
    let trace = extract_trace(&trees, theory)?;
    Ok(Some(SearchOutcome {
        trees,
        answer: answer.restrict(|v| goal_vars.contains(&v)),
        trace,
        applications: search.applications,
    }))
}

/// Like [`auto`], restricting lemma candidates to `trace`.
pub fn auto_with_trace(
    theory: &Theory,
    goals: &[Term],
    trace: &BTreeSet<String>,
    config: &SearchConfig,
) -> Result<Option<SearchOutcome>> {
    let config = SearchConfig {
        trace: Some(trace.clone()),
        ..config.clone()
    };
    auto(theory, goals, &config)
}

#[derive(Clone)]
struct Pending {
    goal: Term,
    /// Remaining depth.
    depth: usize,
    ancestors: Vec<Term>,
}

impl Pending {
    fn apply(&self, s: &Substitution) -> Pending {
        Pending {
            goal: s.apply(&self.goal),
            depth: self.depth,
            ancestors: self.ancestors.iter().map(|a| s.apply(a)).collect(),
        }
    }
}

struct Candidate<'t> {
    name: &'t str,
    kind: NodeKind,
    hypotheses: &'t [Term],
    conclusion: &'t Term,
}

struct Search<'a> {
    theory: &'a Theory,
    eqs: &'a EquationSet,
    config: &'a SearchConfig,
    fresh: Var,
    applications: usize,
}

impl<'a> Search<'a> {
    fn candidates(&self, goal: &Term, depth: usize) -> Vec<Candidate<'a>> {
        let head = goal.head();
        let mut out = Vec::new();
        for (name, a) in &self.theory.assumptions {
            if a.head() == head {
                out.push(Candidate {
                    name,
                    kind: NodeKind::Assumption,
                    hypotheses: &[],
                    conclusion: a,
                });
            }
        }
        for e in &self.theory.entries {
            let Entry::Lemma {
                name,
                hypotheses,
                conclusion,
            } = e
            else {
                continue;
            };
            if conclusion.head() != head {
                continue;
            }
            let usable = if hypotheses.is_empty() {
                true
            } else {
                depth > 0 && self.config.trace.as_ref().is_none_or(|t| t.contains(name))
            };
            if usable {
                out.push(Candidate {
                    name,
                    kind: if hypotheses.is_empty() {
                        NodeKind::Fact
                    } else {
                        NodeKind::Lemma
                    },
                    hypotheses,
                    conclusion,
                });
            }
        }
        out
    }

    /// Solves every goal, cluster by cluster; the first solution of a
    /// cluster is final. Trees come back in input order.
    fn solve_all(&mut self, goals: Vec<Pending>) -> Option<(Substitution, Vec<ProofTree>)> {
        let terms: Vec<Term> = goals.iter().map(|p| p.goal.clone()).collect();
        let mut answer = Substitution::new();
        let mut slots: Vec<Option<ProofTree>> = vec![None; goals.len()];
        for members in cluster(&terms) {
            let part = members.iter().map(|&i| goals[i].clone()).collect();
            let (s, trees) = self.solve_cluster(part)?;
            answer = compose(&answer, &s);
            for (i, t) in members.into_iter().zip(trees) {
                slots[i] = Some(t);
            }
        }
        Some((answer, slots.into_iter().map(|t| t.expect("every goal solved")).collect()))
    }

    fn solve_cluster(&mut self, mut goals: Vec<Pending>) -> Option<(Substitution, Vec<ProofTree>)> {
        if goals.is_empty() {
            return Some((Substitution::new(), Vec::new()));
        }
        let first = goals.remove(0);
        for cand in self.candidates(&first.goal, first.depth) {
            self.applications += 1;
            let Some(m) = smart_apply_with(
                &first.goal,
                cand.hypotheses,
                cand.conclusion,
                self.eqs,
                self.config.max_narrowing,
                &mut self.fresh,
            ) else {
                continue;
            };
            let mut history: Vec<Term> = first.ancestors.iter().map(|a| m.subst.apply(a)).collect();
            history.push(m.subst.apply(&first.goal));
            if self.config.loop_check && m.subgoals.iter().any(|g| loop_detect(&history, g)) {
                continue;
            }
            let n = m.subgoals.len();
            let mut next: Vec<Pending> = m
                .subgoals
                .iter()
                .map(|g| Pending {
                    goal: g.clone(),
                    depth: first.depth.saturating_sub(1),
                    ancestors: history.clone(),
                })
                .collect();
            next.extend(goals.iter().map(|p| p.apply(&m.subst)));
            let Some((s, mut trees)) = self.solve_all(next) else {
                continue;
            };
            let rest = trees.split_off(n);
            let mut out = vec![ProofTree {
                goal: first.goal.clone(),
                by: cand.name.to_string(),
                kind: cand.kind,
                subst: m.subst.clone(),
                chain: m.chain,
                children: trees,
            }];
            out.extend(rest);
            return Some((compose(&m.subst, &s), out));
        }
        None
    }
}
