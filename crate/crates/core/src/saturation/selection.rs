use std::collections::{BTreeMap, BTreeSet};

use crate::clause::{ClauseId, Weight};
use crate::error::{Error, Result};

pub const DEFAULT_RATIO: usize = 5;

/// Passive-set ordering. `select` returns the next batch of given clauses.
pub trait SelectionStrategy: Send {
    fn name(&self) -> &'static str;
    fn insert(&mut self, id: ClauseId, weight: Weight);
    fn select(&mut self) -> Result<Vec<ClauseId>>;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Passive ids, ascending.
    fn ids(&self) -> Vec<ClauseId>;
    /// Selection counter, saved in snapshots.
    fn picks(&self) -> u64;
    fn set_picks(&mut self, picks: u64);
}

/// Weight picks with a periodic age pick: with ratio `r`, pick `k`
/// (counting from 1) goes by age iff `k` is a multiple of `r + 1`.
/// Ties on weight go to the lower id.
#[derive(Debug, Clone)]
pub struct AgeWeight {
    ratio: usize,
    by_weight: BTreeSet<(Weight, ClauseId)>,
    by_age: BTreeMap<ClauseId, Weight>,
    picks: u64,
}

impl AgeWeight {
    pub fn new(ratio: usize) -> Self {
        AgeWeight {
            ratio,
            by_weight: BTreeSet::new(),
            by_age: BTreeMap::new(),
            picks: 0,
        }
    }

    pub fn next_is_age_turn(&self) -> bool {
        (self.picks + 1).is_multiple_of(self.ratio as u64 + 1)
    }
}

impl SelectionStrategy for AgeWeight {
    fn name(&self) -> &'static str {
        "age-weight"
    }

    fn insert(&mut self, id: ClauseId, weight: Weight) {
        if self.by_age.insert(id, weight).is_none() {
            self.by_weight.insert((weight, id));
        }
    }

    fn select(&mut self) -> Result<Vec<ClauseId>> {
        let id = if self.next_is_age_turn() {
            *self.by_age.keys().next().ok_or(Error::EmptyPassive)?
        } else {
            self.by_weight.first().ok_or(Error::EmptyPassive)?.1
        };
        let weight = self.by_age.remove(&id).expect("indexed by age");
        self.by_weight.remove(&(weight, id));
        self.picks += 1;
        Ok(vec![id])
    }

    fn len(&self) -> usize {
        self.by_age.len()
    }

    fn ids(&self) -> Vec<ClauseId> {
        self.by_age.keys().copied().collect()
    }

    fn picks(&self) -> u64 {
        self.picks
    }

    fn set_picks(&mut self, picks: u64) {
        self.picks = picks;
    }
}

/// Takes the whole passive set at once, oldest first.
#[derive(Debug, Clone, Default)]
pub struct BreadthFirst {
    ids: BTreeSet<ClauseId>,
    picks: u64,
}

impl SelectionStrategy for BreadthFirst {
    fn name(&self) -> &'static str {
        "bfs"
    }

    fn insert(&mut self, id: ClauseId, _weight: Weight) {
        self.ids.insert(id);
    }

    fn select(&mut self) -> Result<Vec<ClauseId>> {
        if self.ids.is_empty() {
            return Err(Error::EmptyPassive);
        }
        self.picks += 1;
        Ok(std::mem::take(&mut self.ids).into_iter().collect())
    }

    fn len(&self) -> usize {
        self.ids.len()
    }

    fn ids(&self) -> Vec<ClauseId> {
        self.ids.iter().copied().collect()
    }

    fn picks(&self) -> u64 {
        self.picks
    }

    fn set_picks(&mut self, picks: u64) {
        self.picks = picks;
    }
}

pub type SelectionFactory = fn(usize) -> Box<dyn SelectionStrategy>;

/// Selection strategies by name; the factory receives the age-weight ratio.
#[derive(Clone)]
pub struct SelectionRegistry {
    factories: BTreeMap<&'static str, SelectionFactory>,
}

impl SelectionRegistry {
    pub fn empty() -> Self {
        SelectionRegistry {
            factories: BTreeMap::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        reg.register("age-weight", |r| Box::new(AgeWeight::new(r)));
        reg.register("bfs", |_| Box::new(BreadthFirst::default()));
        reg
    }

    pub fn register(&mut self, name: &'static str, factory: SelectionFactory) {
        self.factories.insert(name, factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    pub fn create(&self, name: &str, ratio: usize) -> Result<Box<dyn SelectionStrategy>> {
        let factory = self
            .factories
            .get(name)
            .ok_or_else(|| Error::UnknownSelection(name.to_string()))?;
        Ok(factory(ratio))
    }
}

impl Default for SelectionRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}
