//! Reduction orderings.
//!
//! Every ordering implements [`TermOrdering`] and is built by name through
//! the [`OrderingRegistry`]. Four are provided:
//!
//! * `kbo`: Knuth-Bendix ordering with symbol weights, a variable weight and
//!   lexicographic comparison of arguments on ties.
//! * `nrkbo`: non-recursive Knuth-Bendix. Same weight and variable
//!   conditions, but a weight tie is broken by a single left-to-right scan
//!   of the pre-order symbol strings of both terms: the first differing
//!   pair decides by precedence, and a variable at that point means the
//!   terms are incomparable. No recursive ordering call is made on
//!   arguments. All weights must be positive.
//! * `lpo`: lexicographic path ordering.
//! * `rpo`: recursive path ordering, i.e. the path ordering with multiset
//!   status for every symbol.
//!
//! `compare` never guesses: when neither term is provably greater the
//! answer is `Incomparable`.

mod kbo;
mod path;
mod registry;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::terms::{Symbol, Term};

pub use kbo::{Kbo, NonRecursiveKbo};
pub use path::{Lpo, Rpo};
pub use registry::{OrderingFactory, OrderingRegistry};

/// Reserved nullary symbol encoding `P(..) = ⊤` atoms. Always precedence-minimal.
pub const TOP: &str = "true";

pub fn top() -> Term {
    Term::constant(TOP)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Greater,
    Less,
    Equal,
    Incomparable,
}

impl Comparison {
    pub fn reverse(self) -> Comparison {
        match self {
            Comparison::Greater => Comparison::Less,
            Comparison::Less => Comparison::Greater,
            other => other,
        }
    }

    /// `s ⪯ t` for the pair that produced this answer.
    pub fn is_less_or_equal(self) -> bool {
        matches!(self, Comparison::Less | Comparison::Equal)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    LeftToRight,
    RightToLeft,
    Unorientable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderingKind {
    Kbo,
    Nrkbo,
    Lpo,
    Rpo,
}

impl OrderingKind {
    pub const ALL: [OrderingKind; 4] = [
        OrderingKind::Kbo,
        OrderingKind::Nrkbo,
        OrderingKind::Lpo,
        OrderingKind::Rpo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderingKind::Kbo => "kbo",
            OrderingKind::Nrkbo => "nrkbo",
            OrderingKind::Lpo => "lpo",
            OrderingKind::Rpo => "rpo",
        }
    }

    pub fn build(self, precedence: Precedence) -> Result<Box<dyn TermOrdering>> {
        OrderingRegistry::builtin().create(self.name(), precedence)
    }
}

impl fmt::Display for OrderingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OrderingKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownOrdering(s.to_string()))
    }
}

/// Total strict order on symbols plus Knuth-Bendix weights.
///
/// Symbols outside the precedence still compare deterministically (below
/// every listed symbol, among themselves by the default key) so the
/// orderings stay total; [`TermOrdering::checked_compare`] reports them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Precedence {
    /// Higher rank is greater.
    ranks: BTreeMap<Symbol, usize>,
    weights: BTreeMap<Symbol, u32>,
    var_weight: u32,
}

impl Precedence {
    /// Orders symbols by arity (higher is greater), then by name (earlier
    /// in lexicographic order is greater). Every weight is 1.
    pub fn default_for(symbols: impl IntoIterator<Item = Symbol>) -> Self {
        let mut syms: Vec<Symbol> = symbols.into_iter().filter(|s| s.name() != TOP).collect();
        syms.sort_by(default_key_cmp);
        syms.dedup();
        Self::from_order(syms)
    }

    /// `order` lists symbols from least to greatest.
    pub fn from_order(order: Vec<Symbol>) -> Self {
        let ranks = order
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i + 1))
            .collect();
        Precedence {
            ranks,
            weights: BTreeMap::new(),
            var_weight: 1,
        }
    }

    pub fn with_weight(mut self, symbol: Symbol, weight: u32) -> Self {
        self.weights.insert(symbol, weight);
        self
    }

    pub fn with_var_weight(mut self, weight: u32) -> Self {
        self.var_weight = weight;
        self
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.ranks.keys()
    }

    /// Listed symbols from least to greatest.
    pub fn order(&self) -> Vec<Symbol> {
        let mut v: Vec<_> = self.ranks.iter().collect();
        v.sort_by_key(|(_, r)| **r);
        v.into_iter().map(|(s, _)| s.clone()).collect()
    }

    /// Weights set with [`Precedence::with_weight`].
    pub fn explicit_weights(&self) -> impl Iterator<Item = (&Symbol, u32)> {
        self.weights.iter().map(|(s, w)| (s, *w))
    }

    pub fn weight(&self, symbol: &Symbol) -> u32 {
        self.weights.get(symbol).copied().unwrap_or(1)
    }

    pub fn var_weight(&self) -> u32 {
        self.var_weight
    }

    pub fn contains(&self, symbol: &Symbol) -> bool {
        symbol.name() == TOP || self.ranks.contains_key(symbol)
    }

    pub fn compare_symbols(&self, a: &Symbol, b: &Symbol) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        match (a.name() == TOP, b.name() == TOP) {
            (true, _) => return Ordering::Less,
            (_, true) => return Ordering::Greater,
            _ => {}
        }
        match (self.ranks.get(a), self.ranks.get(b)) {
            (Some(x), Some(y)) => x.cmp(y),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => default_key_cmp(a, b),
        }
    }

    pub fn covers(&self, t: &Term) -> Result<()> {
        let mut missing = None;
        t.for_each_symbol(&mut |s| {
            if missing.is_none() && !self.contains(s) {
                missing = Some(s.clone());
            }
        });
        match missing {
            Some(s) => Err(Error::UnknownSymbol(s)),
            None => Ok(()),
        }
    }

    /// Knuth-Bendix admissibility of the weight function.
    pub fn validate_kbo(&self, allow_zero_unary: bool) -> Result<()> {
        if self.var_weight == 0 {
            return Err(Error::InvalidPrecedence("variable weight must be positive".into()));
        }
        for sym in self.ranks.keys().chain(self.weights.keys()) {
            let w = self.weight(sym);
            if sym.arity() == 0 && w < self.var_weight {
                return Err(Error::InvalidPrecedence(format!(
                    "constant {sym} lighter than a variable"
                )));
            }
            if w == 0 {
                if !allow_zero_unary || sym.arity() != 1 {
                    return Err(Error::InvalidPrecedence(format!("{sym} has weight 0")));
                }
                let maximal = self
                    .ranks
                    .keys()
                    .all(|other| other == sym || self.compare_symbols(sym, other).is_gt());
                if !maximal {
                    return Err(Error::InvalidPrecedence(format!(
                        "weight-0 unary symbol {sym} must be precedence-maximal"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Sum of symbol weights and variable weights.
    pub fn term_weight(&self, t: &Term) -> u64 {
        match t {
            Term::Var(_) => self.var_weight as u64,
            Term::App(f, args) => {
                self.weight(f) as u64 + args.iter().map(|a| self.term_weight(a)).sum::<u64>()
            }
        }
    }
}

/// Greater arity first, then lexicographically smaller name.
fn default_key_cmp(a: &Symbol, b: &Symbol) -> Ordering {
    a.arity()
        .cmp(&b.arity())
        .then_with(|| b.name().cmp(a.name()))
}

/// A reduction ordering on terms.
pub trait TermOrdering: Send + Sync {
    fn name(&self) -> &'static str;

    fn precedence(&self) -> &Precedence;

    /// Strict `s > t`.
    fn greater(&self, s: &Term, t: &Term) -> bool;

    fn compare(&self, s: &Term, t: &Term) -> Comparison {
        if s == t {
            Comparison::Equal
        } else if self.greater(s, t) {
            Comparison::Greater
        } else if self.greater(t, s) {
            Comparison::Less
        } else {
            Comparison::Incomparable
        }
    }

    /// Like [`TermOrdering::compare`] but rejects symbols outside the precedence.
    fn checked_compare(&self, s: &Term, t: &Term) -> Result<Comparison> {
        self.precedence().covers(s)?;
        self.precedence().covers(t)?;
        Ok(self.compare(s, t))
    }

    fn orient(&self, l: &Term, r: &Term) -> Orientation {
        match self.compare(l, r) {
            Comparison::Greater => Orientation::LeftToRight,
            Comparison::Less => Orientation::RightToLeft,
            Comparison::Equal | Comparison::Incomparable => Orientation::Unorientable,
        }
    }
}

/// Compares two terms with a freshly built ordering of the given kind.
pub fn compare(kind: OrderingKind, precedence: &Precedence, s: &Term, t: &Term) -> Result<Comparison> {
    kind.build(precedence.clone())?.checked_compare(s, t)
}

/// Variable-count condition shared by both Knuth-Bendix variants:
/// every variable occurs in `s` at least as often as in `t`.
pub(crate) fn var_counts_dominate(s: &Term, t: &Term) -> bool {
    let mut balance: BTreeMap<u32, i64> = BTreeMap::new();
    s.for_each_var(&mut |v| *balance.entry(v).or_default() += 1);
    t.for_each_var(&mut |v| *balance.entry(v).or_default() -= 1);
    balance.values().all(|&n| n >= 0)
}
