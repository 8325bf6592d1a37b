//! The given-clause loop.
//!
//! Facts and goals share one passive queue. A selected clause is simplified
//! against the active set, added to it, and combined with every active
//! clause; surviving conclusions go back to the passive queue.

mod selection;
mod snapshot;

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use crate::calculus::{
    demodulate, equality_resolution, equation_positions, simplify, superpose_at,
    SimplificationIndex, Simplified, DEFAULT_DEMOD_LIMIT,
};
use crate::clause::{
    subsumes, weigh, ClauseBag, ClauseId, Conclusion, Direction, ProofStep, Rule, Sign,
    UnitClause, Weight,
};
use crate::error::Result;
use crate::index::DiscriminationTree;
use crate::ordering::{Comparison, OrderingRegistry, Precedence, TermOrdering};
use crate::terms::{rename_apart, Equation, Position, Symbol};

pub use selection::{
    AgeWeight, BreadthFirst, SelectionFactory, SelectionRegistry, SelectionStrategy, DEFAULT_RATIO,
};
pub use snapshot::SNAPSHOT_VERSION;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SaturationConfig {
    /// Name in the ordering registry.
    pub ordering: String,
    /// Name in the selection registry.
    pub selection: String,
    pub ratio: usize,
    pub max_iterations: Option<usize>,
    pub timeout: Option<Duration>,
    /// Conclusions heavier than this are discarded.
    pub max_weight: Option<Weight>,
    pub demod_limit: usize,
    /// Forward and backward simplification.
    pub simplify: bool,
}

impl Default for SaturationConfig {
    fn default() -> Self {
        SaturationConfig {
            ordering: "kbo".into(),
            selection: "age-weight".into(),
            ratio: DEFAULT_RATIO,
            max_iterations: None,
            timeout: None,
            max_weight: None,
            demod_limit: DEFAULT_DEMOD_LIMIT,
            simplify: true,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Stats {
    /// Given clauses processed.
    pub iterations: u64,
    /// Conclusions produced by inferences.
    pub generated: u64,
    /// Clauses that entered the passive queue.
    pub kept: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResourceReason {
    Iterations,
    Timeout,
    Cancelled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// The id of the empty clause.
    Refutation(ClauseId),
    Saturated,
    ResourceOut(ResourceReason),
}

pub struct Saturation {
    config: SaturationConfig,
    ord: Box<dyn TermOrdering>,
    bag: ClauseBag,
    active: BTreeSet<ClauseId>,
    passive: Box<dyn SelectionStrategy>,
    simp: SimplificationIndex,
    /// Sides of active facts usable as the rewriting side, by direction.
    sides: DiscriminationTree<(ClauseId, Direction)>,
    /// Non-variable subterms of active clauses.
    subterms: DiscriminationTree<(ClauseId, Position)>,
    stats: Stats,
    refutation: Option<ClauseId>,
    cancel: Option<Arc<AtomicBool>>,
}

/// Every symbol occurring in the given equations.
pub fn symbols_of<'a>(eqs: impl IntoIterator<Item = &'a Equation>) -> Vec<Symbol> {
    let mut out = BTreeSet::new();
    for eq in eqs {
        eq.left.for_each_symbol(&mut |s| {
            out.insert(s.clone());
        });
        eq.right.for_each_symbol(&mut |s| {
            out.insert(s.clone());
        });
    }
    out.into_iter().collect()
}

impl Saturation {
    pub fn new(config: SaturationConfig, precedence: Precedence) -> Result<Self> {
        Self::with_registries(
            config,
            precedence,
            &OrderingRegistry::builtin(),
            &SelectionRegistry::builtin(),
        )
    }

    pub fn with_registries(
        config: SaturationConfig,
        precedence: Precedence,
        orderings: &OrderingRegistry,
        selections: &SelectionRegistry,
    ) -> Result<Self> {
        let ord = orderings.create(&config.ordering, precedence)?;
        let passive = selections.create(&config.selection, config.ratio)?;
        Ok(Saturation {
            config,
            ord,
            bag: ClauseBag::new(),
            active: BTreeSet::new(),
            passive,
            simp: SimplificationIndex::new(),
            sides: DiscriminationTree::new(),
            subterms: DiscriminationTree::new(),
            stats: Stats::default(),
            refutation: None,
            cancel: None,
        })
    }

    /// A state holding the named axioms and goals in the passive queue,
    /// with the default precedence over their symbols.
    pub fn from_problem(
        axioms: &[(String, Equation)],
        goals: &[(String, Equation)],
        config: SaturationConfig,
    ) -> Result<Self> {
        let prec = Precedence::default_for(symbols_of(axioms.iter().chain(goals).map(|(_, e)| e)));
        let mut state = Self::new(config, prec)?;
        for (name, eq) in axioms {
            state.add_input(name, Sign::Positive, eq.clone())?;
        }
        for (name, eq) in goals {
            state.add_input(name, Sign::Negative, eq.clone())?;
        }
        Ok(state)
    }

    pub fn set_cancel(&mut self, flag: Arc<AtomicBool>) {
        self.cancel = Some(flag);
    }

    pub fn config(&self) -> &SaturationConfig {
        &self.config
    }

    pub fn ordering(&self) -> &dyn TermOrdering {
        self.ord.as_ref()
    }

    pub fn bag(&self) -> &ClauseBag {
        &self.bag
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn refutation(&self) -> Option<ClauseId> {
        self.refutation
    }

    pub fn active_ids(&self) -> impl Iterator<Item = ClauseId> + '_ {
        self.active.iter().copied()
    }

    pub fn passive_ids(&self) -> Vec<ClauseId> {
        self.passive.ids()
    }

    pub fn active_clauses(&self) -> impl Iterator<Item = &UnitClause> {
        self.active.iter().filter_map(|id| self.bag.get(*id))
    }

    pub fn passive_clauses(&self) -> impl Iterator<Item = &UnitClause> {
        self.passive.ids().into_iter().filter_map(|id| self.bag.get(id))
    }

    /// Adds an input clause to the passive queue.
    pub fn add_input(&mut self, name: &str, sign: Sign, equation: Equation) -> Result<ClauseId> {
        let id = self.bag.insert(Conclusion {
            sign,
            equation,
            step: ProofStep::Input(name.to_string()),
        })?;
        if sign == Sign::Negative {
            self.try_resolution(id)?;
        }
        let w = weigh(self.bag.clause(id)?);
        self.passive.insert(id, w);
        Ok(id)
    }

    /// Adds an equation straight to the active set, running one given-clause
    /// cycle for it. Returns the empty clause if that closes a goal.
    pub fn extend_active(&mut self, name: &str, equation: Equation) -> Result<Option<ClauseId>> {
        let id = self.bag.insert(Conclusion {
            sign: Sign::Positive,
            equation,
            step: ProofStep::Input(name.to_string()),
        })?;
        self.process_given(id)
    }

    /// Runs the loop until refutation, saturation or a limit.
    pub fn run(&mut self) -> Result<Outcome> {
        let start = Instant::now();
        loop {
            if let Some(e) = self.refutation {
                return Ok(Outcome::Refutation(e));
            }
            if let Some(reason) = self.limit_hit(start) {
                return Ok(Outcome::ResourceOut(reason));
            }
            if self.passive.is_empty() {
                return Ok(Outcome::Saturated);
            }
            for id in self.passive.select()? {
                self.stats.iterations += 1;
                if let Some(e) = self.process_given(id)? {
                    return Ok(Outcome::Refutation(e));
                }
            }
        }
    }

    fn limit_hit(&self, start: Instant) -> Option<ResourceReason> {
        if self
            .cancel
            .as_ref()
            .is_some_and(|c| c.load(AtomicOrdering::Relaxed))
        {
            return Some(ResourceReason::Cancelled);
        }
        if self
            .config
            .max_iterations
            .is_some_and(|m| self.stats.iterations >= m as u64)
        {
            return Some(ResourceReason::Iterations);
        }
        if self.config.timeout.is_some_and(|t| start.elapsed() >= t) {
            return Some(ResourceReason::Timeout);
        }
        None
    }

    fn process_given(&mut self, id: ClauseId) -> Result<Option<ClauseId>> {
        let id = match self.simplify(id)? {
            Some(id) => id,
            None => return Ok(None),
        };
        let given = self.bag.clause(id)?.clone();
        if given.is_goal() {
            if let Some(e) = self.try_resolution(id)? {
                return Ok(Some(e));
            }
        } else if self.config.simplify {
            if let Some(e) = self.backward_simplify(&given)? {
                return Ok(Some(e));
            }
        }
        self.activate(&given);
        for concl in self.generate(&given)? {
            if let Some(e) = self.add_new(concl)? {
                return Ok(Some(e));
            }
        }
        Ok(None)
    }

    fn simplify(&mut self, id: ClauseId) -> Result<Option<ClauseId>> {
        if !self.config.simplify {
            return Ok(Some(id));
        }
        let limit = self.config.demod_limit;
        match simplify(&mut self.bag, id, &self.simp, self.ord.as_ref(), limit, None)? {
            Simplified::Keep(id) => Ok(Some(id)),
            Simplified::Drop(_) => Ok(None),
        }
    }

    fn try_resolution(&mut self, id: ClauseId) -> Result<Option<ClauseId>> {
        let Some(concl) = equality_resolution(self.bag.clause(id)?) else {
            return Ok(None);
        };
        let e = self.bag.insert(concl)?;
        self.refutation.get_or_insert(e);
        Ok(self.refutation)
    }

    fn add_new(&mut self, concl: Conclusion) -> Result<Option<ClauseId>> {
        self.stats.generated += 1;
        if concl.sign == Sign::Positive && concl.equation.left == concl.equation.right {
            return Ok(None);
        }
        let id = self.bag.insert(concl)?;
        self.enqueue(id)
    }

    fn enqueue(&mut self, id: ClauseId) -> Result<Option<ClauseId>> {
        let Some(id) = self.simplify(id)? else {
            return Ok(None);
        };
        let c = self.bag.clause(id)?;
        let w = weigh(c);
        if c.is_goal() {
            if let Some(e) = self.try_resolution(id)? {
                return Ok(Some(e));
            }
        }
        if self.config.max_weight.is_some_and(|m| w > m) {
            return Ok(None);
        }
        self.passive.insert(id, w);
        self.stats.kept += 1;
        Ok(None)
    }

    /// Rewrites or removes active clauses made redundant by a new fact.
    fn backward_simplify(&mut self, given: &UnitClause) -> Result<Option<ClauseId>> {
        let ord = self.ord.as_ref();
        let mut single = SimplificationIndex::new();
        single.add(given, ord);
        let mut redundant = Vec::new();
        for &aid in &self.active {
            let a = self.bag.clause(aid)?;
            if a.is_positive() && subsumes(given, a).is_some() {
                redundant.push((aid, None));
                continue;
            }
            if single.demodulator_count() > 0 {
                let limit = self.config.demod_limit;
                let out = demodulate(&mut self.bag, aid, &single, ord, limit, None)?;
                if out != aid {
                    redundant.push((aid, Some(out)));
                }
            }
        }
        for (aid, rewritten) in redundant {
            let a = self.bag.clause(aid)?.clone();
            self.deactivate(&a)?;
            if let Some(out) = rewritten {
                if let Some(e) = self.enqueue(out)? {
                    return Ok(Some(e));
                }
            }
        }
        Ok(None)
    }

    fn directions(&self, c: &UnitClause) -> Vec<Direction> {
        match self.ord.compare(c.left(), c.right()) {
            Comparison::Greater => vec![Direction::LeftToRight],
            Comparison::Less => vec![Direction::RightToLeft],
            Comparison::Incomparable => vec![Direction::LeftToRight, Direction::RightToLeft],
            Comparison::Equal => Vec::new(),
        }
    }

    fn activate(&mut self, c: &UnitClause) {
        self.active.insert(c.id);
        self.simp.add(c, self.ord.as_ref());
        if c.is_positive() {
            for dir in self.directions(c) {
                let (l, _) = dir.sides(&c.equation);
                self.sides.insert(l.clone(), (c.id, dir));
            }
        }
        for pos in equation_positions(&c.equation) {
            let t = c.equation.subterm_at(&pos).expect("own position").clone();
            self.subterms.insert(t, (c.id, pos));
        }
    }

    fn deactivate(&mut self, c: &UnitClause) -> Result<()> {
        self.active.remove(&c.id);
        self.simp.remove(c, self.ord.as_ref())?;
        if c.is_positive() {
            for dir in self.directions(c) {
                let (l, _) = dir.sides(&c.equation);
                self.sides.remove(l, &(c.id, dir))?;
            }
        }
        for pos in equation_positions(&c.equation) {
            let t = c.equation.subterm_at(&pos)?;
            self.subterms.remove(t, &(c.id, pos.clone()))?;
        }
        Ok(())
    }

    /// All superposition conclusions between `given` and the active set
    /// (which already contains `given`), in a deterministic order.
    fn generate(&self, given: &UnitClause) -> Result<Vec<Conclusion>> {
        let mut cands: Vec<(ClauseId, Position, ClauseId, Direction)> = Vec::new();
        if given.is_positive() {
            for dir in self.directions(given) {
                let (l, _) = dir.sides(&given.equation);
                for (_, (into, pos)) in self.subterms.retrieve_unifiables(l) {
                    cands.push((*into, pos.clone(), given.id, dir));
                }
            }
        }
        for pos in equation_positions(&given.equation) {
            let t = given.equation.subterm_at(&pos)?;
            for (_, (from, dir)) in self.sides.retrieve_unifiables(t) {
                if *from != given.id {
                    cands.push((given.id, pos.clone(), *from, *dir));
                }
            }
        }
        cands.sort();
        cands.dedup();

        let mut out = Vec::new();
        let mut renamed: Option<((ClauseId, ClauseId), Equation)> = None;
        for (into_id, pos, from_id, dir) in cands {
            let into = self.bag.clause(into_id)?;
            let from = self.bag.clause(from_id)?;
            let from_eq = match &renamed {
                Some((key, eq)) if *key == (into_id, from_id) => eq.clone(),
                _ => {
                    let eq = rename_apart(&from.equation, &into.equation);
                    renamed = Some(((into_id, from_id), eq.clone()));
                    eq
                }
            };
            let rule = if into.is_positive() {
                Rule::SuperpositionRight
            } else {
                Rule::SuperpositionLeft
            };
            let sides = dir.sides(&from_eq);
            out.extend(superpose_at(into, from, rule, self.ord.as_ref(), dir, sides, &pos));
        }
        Ok(out)
    }
}

/// Saturates a problem from scratch.
pub fn saturate(
    axioms: &[(String, Equation)],
    goals: &[(String, Equation)],
    config: SaturationConfig,
) -> Result<(Outcome, Saturation)> {
    let mut state = Saturation::from_problem(axioms, goals, config)?;
    let outcome = state.run()?;
    Ok((outcome, state))
}
