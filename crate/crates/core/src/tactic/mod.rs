//! Backward proof search over atoms, matching lemmas modulo equations.
//!
//! Atoms are terms such as `le(k,n)`. A lemma `H1 -> ... -> A` applies to a
//! goal `G` when `A = G` can be closed by a few rounds of narrowing with the
//! theory's equations; the instantiated hypotheses become new goals.

mod search;
mod smart;
mod theory_file;

use std::collections::BTreeSet;

use crate::clause::{ClauseBag, ClauseId};
use crate::error::{Error, Result};
use crate::ordering::{Precedence, TermOrdering};
use crate::saturation::{symbols_of, Saturation, SaturationConfig};
use crate::terms::{Equation, Symbol, Term};

pub use search::{auto, auto_with_trace, cluster, extract_trace, loop_detect, NodeKind, ProofTree, SearchOutcome};
pub use smart::{smart_apply, smart_apply_with, SmartMatch};
pub use theory_file::{format_trace, parse_theory, parse_trace, read_theory};

pub const DEFAULT_NARROWING: usize = 3;
pub const DEFAULT_DEPTH: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entry {
    Lemma {
        name: String,
        hypotheses: Vec<Term>,
        conclusion: Term,
    },
    Equation {
        name: String,
        equation: Equation,
    },
}

impl Entry {
    pub fn name(&self) -> &str {
        match self {
            Entry::Lemma { name, .. } | Entry::Equation { name, .. } => name,
        }
    }

    /// A lemma without hypotheses.
    pub fn is_fact(&self) -> bool {
        matches!(self, Entry::Lemma { hypotheses, .. } if hypotheses.is_empty())
    }
}

/// Declarations from a theory file, in file order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Theory {
    pub entries: Vec<Entry>,
    /// Local hypotheses of the problem.
    pub assumptions: Vec<(String, Term)>,
    pub goals: Vec<(String, Vec<Term>)>,
}

impl Theory {
    pub fn entry(&self, name: &str) -> Option<&Entry> {
        self.entries.iter().find(|e| e.name() == name)
    }

    pub fn equations(&self) -> impl Iterator<Item = (&str, &Equation)> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Equation { name, equation } => Some((name.as_str(), equation)),
            Entry::Lemma { .. } => None,
        })
    }

    /// The theory without the named entry.
    pub fn without(&self, name: &str) -> Theory {
        Theory {
            entries: self.entries.iter().filter(|e| e.name() != name).cloned().collect(),
            ..self.clone()
        }
    }

    /// Every symbol mentioned anywhere in the theory.
    pub fn symbols(&self) -> Vec<Symbol> {
        let mut eqs: Vec<Equation> = Vec::new();
        let atom = |t: &Term| Equation::new(t.clone(), t.clone());
        for e in &self.entries {
            match e {
                Entry::Equation { equation, .. } => eqs.push(equation.clone()),
                Entry::Lemma {
                    hypotheses,
                    conclusion,
                    ..
                } => {
                    eqs.extend(hypotheses.iter().map(atom));
                    eqs.push(atom(conclusion));
                }
            }
        }
        eqs.extend(self.assumptions.iter().map(|(_, a)| atom(a)));
        for (_, goal) in &self.goals {
            eqs.extend(goal.iter().map(atom));
        }
        symbols_of(&eqs)
    }
}

/// The theory's equations after one given-clause cycle each, as used for
/// narrowing.
pub struct EquationSet {
    bag: ClauseBag,
    active: Vec<ClauseId>,
    ord: Box<dyn TermOrdering>,
}

impl EquationSet {
    /// Adds the equations of `theory` to an empty active set in declaration
    /// order, ordered by KBO with the default precedence over `extra` and
    /// the theory's own symbols.
    pub fn load(theory: &Theory, extra: &[Symbol]) -> Result<EquationSet> {
        let mut syms = theory.symbols();
        syms.extend(extra.iter().cloned());
        let mut state = Saturation::new(SaturationConfig::default(), Precedence::default_for(syms))?;
        for (name, eq) in theory.equations() {
            state.extend_active(name, eq.clone())?;
        }
        let active = state.active_ids().collect();
        let prec = state.ordering().precedence().clone();
        Ok(EquationSet {
            bag: state.bag().clone(),
            active,
            ord: crate::ordering::OrderingKind::Kbo.build(prec)?,
        })
    }

    pub fn ordering(&self) -> &dyn TermOrdering {
        self.ord.as_ref()
    }

    pub fn bag(&self) -> &ClauseBag {
        &self.bag
    }

    pub fn active(&self) -> &[ClauseId] {
        &self.active
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_depth: usize,
    pub max_narrowing: usize,
    /// Restricts lemma candidates to these names.
    pub trace: Option<BTreeSet<String>>,
    /// Prune subgoals that are instances of an open ancestor.
    pub loop_check: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_depth: DEFAULT_DEPTH,
            max_narrowing: DEFAULT_NARROWING,
            trace: None,
            loop_check: true,
        }
    }
}

impl SearchConfig {
    /// Checks that every trace name is a lemma of `theory`.
    pub fn validate(&self, theory: &Theory) -> Result<()> {
        for name in self.trace.iter().flatten() {
            match theory.entry(name) {
                Some(Entry::Lemma { .. }) => {}
                _ => return Err(Error::UnknownName(name.clone())),
            }
        }
        Ok(())
    }
}
