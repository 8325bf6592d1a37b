//! First-order terms, positions, substitutions, unification and matching.
//!
//! Terms are untyped trees over named symbols with integer variables.
//! Constants are compounds with no arguments. Variables are scoped per
//! clause and implicitly universally quantified.

mod subst;
mod syntax;
mod unify;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use subst::{compose, Substitution};
pub use syntax::{is_variable_name, parse_equation, parse_term, TermParser, VarScope};
pub use unify::{match_term, unify};

/// Identifier of a variable within its clause.
pub type Var = u32;

/// A function (or predicate, or constant) symbol.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    name: Arc<str>,
    arity: usize,
}

impl Symbol {
    pub fn new(name: impl Into<Arc<str>>, arity: usize) -> Self {
        Symbol {
            name: name.into(),
            arity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    App(Symbol, Vec<Term>),
}

/// Path of 1-based argument indices from the root. Empty is the root.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, index: usize) -> Position {
        let mut path = self.0.clone();
        path.push(index);
        Position(path)
    }

    pub fn prepend(&self, index: usize) -> Position {
        let mut path = Vec::with_capacity(self.0.len() + 1);
        path.push(index);
        path.extend_from_slice(&self.0);
        Position(path)
    }

    /// Splits off the first index.
    pub fn split_first(&self) -> Option<(usize, Position)> {
        self.0
            .split_first()
            .map(|(head, rest)| (*head, Position(rest.to_vec())))
    }
}

impl fmt::Debug for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, idx) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{idx}")?;
        }
        f.write_str("]")
    }
}

impl Term {
    pub fn var(v: Var) -> Term {
        Term::Var(v)
    }

    pub fn constant(name: &str) -> Term {
        Term::App(Symbol::new(name, 0), Vec::new())
    }

    /// Builds a compound; the symbol arity is taken from `args`.
    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(Symbol::new(name, args.len()), args)
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            Term::App(..) => None,
        }
    }

    pub fn head(&self) -> Option<&Symbol> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    pub fn occurs(&self, v: Var) -> bool {
        match self {
            Term::Var(w) => *w == v,
            Term::App(_, args) => args.iter().any(|a| a.occurs(v)),
        }
    }

    /// Variables in first-occurrence (pre-order) order, without repeats.
    pub fn vars_in_order(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_vars_ordered(&mut out);
        out
    }

    fn collect_vars_ordered(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars_ordered(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.for_each_var(&mut |v| {
            out.insert(v);
        });
        out
    }

    pub fn for_each_var(&self, f: &mut impl FnMut(Var)) {
        match self {
            Term::Var(v) => f(*v),
            Term::App(_, args) => args.iter().for_each(|a| a.for_each_var(f)),
        }
    }

    pub fn max_var(&self) -> Option<Var> {
        let mut max = None;
        self.for_each_var(&mut |v| max = Some(max.map_or(v, |m: Var| m.max(v))));
        max
    }

    pub fn map_vars(&self, f: &impl Fn(Var) -> Term) -> Term {
        match self {
            Term::Var(v) => f(*v),
            Term::App(sym, args) => {
                Term::App(sym.clone(), args.iter().map(|a| a.map_vars(f)).collect())
            }
        }
    }

    /// Every symbol occurring in the term.
    pub fn for_each_symbol<'a>(&'a self, f: &mut impl FnMut(&'a Symbol)) {
        if let Term::App(sym, args) = self {
            f(sym);
            args.iter().for_each(|a| a.for_each_symbol(f));
        }
    }

    pub fn subterm_at(&self, pos: &Position) -> Result<&Term> {
        let mut cur = self;
        for &idx in &pos.0 {
            match cur {
                Term::App(_, args) if idx >= 1 && idx <= args.len() => cur = &args[idx - 1],
                _ => return Err(Error::InvalidPosition(pos.clone())),
            }
        }
        Ok(cur)
    }

    pub fn replace_at(&self, pos: &Position, replacement: Term) -> Result<Term> {
        self.replace_path(&pos.0, replacement)
            .ok_or_else(|| Error::InvalidPosition(pos.clone()))
    }

    fn replace_path(&self, path: &[usize], replacement: Term) -> Option<Term> {
        let Some((&idx, rest)) = path.split_first() else {
            return Some(replacement);
        };
        match self {
            Term::App(sym, args) if idx >= 1 && idx <= args.len() => {
                let mut new_args = args.clone();
                new_args[idx - 1] = args[idx - 1].replace_path(rest, replacement)?;
                Some(Term::App(sym.clone(), new_args))
            }
            _ => None,
        }
    }

    /// Positions of non-variable subterms, pre-order, left to right.
    pub fn nonvar_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_nonvar(&mut path, &mut out);
        out
    }

    fn collect_nonvar(&self, path: &mut Vec<usize>, out: &mut Vec<Position>) {
        if let Term::App(_, args) = self {
            out.push(Position(path.clone()));
            for (i, a) in args.iter().enumerate() {
                path.push(i + 1);
                a.collect_nonvar(path, out);
                path.pop();
            }
        }
    }

    /// All positions, children before parents, left to right.
    pub fn postorder_positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_post(&mut path, &mut out);
        out
    }

    fn collect_post(&self, path: &mut Vec<usize>, out: &mut Vec<Position>) {
        if let Term::App(_, args) = self {
            for (i, a) in args.iter().enumerate() {
                path.push(i + 1);
                a.collect_post(path, out);
                path.pop();
            }
        }
        out.push(Position(path.clone()));
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "X{v}"),
            Term::App(sym, args) if args.is_empty() => f.write_str(sym.name()),
            Term::App(sym, args) => {
                write!(f, "{}(", sym.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// An unordered pair of terms viewed as a single tree `=(left, right)`.
///
/// Clause-level positions start with 1 (left side) or 2 (right side).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub left: Term,
    pub right: Term,
}

impl Equation {
    pub fn new(left: Term, right: Term) -> Self {
        Equation { left, right }
    }

    pub fn side(&self, index: usize) -> Option<&Term> {
        match index {
            1 => Some(&self.left),
            2 => Some(&self.right),
            _ => None,
        }
    }

    pub fn flipped(&self) -> Equation {
        Equation::new(self.right.clone(), self.left.clone())
    }

    pub fn subterm_at(&self, pos: &Position) -> Result<&Term> {
        let (side, rest) = pos
            .split_first()
            .ok_or_else(|| Error::InvalidPosition(pos.clone()))?;
        let term = self
            .side(side)
            .ok_or_else(|| Error::InvalidPosition(pos.clone()))?;
        term.subterm_at(&rest)
            .map_err(|_| Error::InvalidPosition(pos.clone()))
    }

    pub fn replace_at(&self, pos: &Position, replacement: Term) -> Result<Equation> {
        let (side, rest) = pos
            .split_first()
            .ok_or_else(|| Error::InvalidPosition(pos.clone()))?;
        let bad = |_| Error::InvalidPosition(pos.clone());
        match side {
            1 => Ok(Equation::new(
                self.left.replace_at(&rest, replacement).map_err(bad)?,
                self.right.clone(),
            )),
            2 => Ok(Equation::new(
                self.left.clone(),
                self.right.replace_at(&rest, replacement).map_err(bad)?,
            )),
            _ => Err(Error::InvalidPosition(pos.clone())),
        }
    }

    pub fn apply(&self, subst: &Substitution) -> Equation {
        Equation::new(subst.apply(&self.left), subst.apply(&self.right))
    }

    pub fn max_var(&self) -> Option<Var> {
        match (self.left.max_var(), self.right.max_var()) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        }
    }

    pub fn vars_in_order(&self) -> Vec<Var> {
        let mut out = self.left.vars_in_order();
        for v in self.right.vars_in_order() {
            if !out.contains(&v) {
                out.push(v);
            }
        }
        out
    }

    pub fn map_vars(&self, f: &impl Fn(Var) -> Term) -> Equation {
        Equation::new(self.left.map_vars(f), self.right.map_vars(f))
    }

    /// Renames variables to 0, 1, ... in first-occurrence order.
    pub fn normalized(&self) -> Equation {
        let order = self.vars_in_order();
        self.map_vars(&|v| {
            let idx = order.iter().position(|w| *w == v).expect("var collected");
            Term::Var(idx as Var)
        })
    }

    /// True when the two equations are equal up to a bijective variable renaming.
    pub fn is_variant_of(&self, other: &Equation) -> bool {
        self.normalized() == other.normalized()
    }

    /// The pair as a single term, used for simultaneous matching of both sides.
    pub fn as_term(&self) -> Term {
        Term::App(
            Symbol::new("=", 2),
            vec![self.left.clone(), self.right.clone()],
        )
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.left, self.right)
    }
}

/// Values with clause-scoped variables that can be renamed apart.
pub trait Renamable: Sized {
    fn max_var(&self) -> Option<Var>;
    fn shift_vars(&self, by: Var) -> Self;
}

impl Renamable for Term {
    fn max_var(&self) -> Option<Var> {
        Term::max_var(self)
    }

    fn shift_vars(&self, by: Var) -> Self {
        self.map_vars(&|v| Term::Var(v + by))
    }
}

impl Renamable for Equation {
    fn max_var(&self) -> Option<Var> {
        Equation::max_var(self)
    }

    fn shift_vars(&self, by: Var) -> Self {
        self.map_vars(&|v| Term::Var(v + by))
    }
}

/// Offset that moves every variable of a value strictly above those of `other`.
pub fn apart_offset<B: Renamable>(other: &B) -> Var {
    other.max_var().map_or(0, |m| m + 1)
}

/// Copy of `value` whose variables are disjoint from those of `other`.
///
/// Variables are shifted by one more than the largest variable of `other`,
/// so the renaming is a bijection and ground values come back unchanged.
pub fn rename_apart<A: Renamable, B: Renamable>(value: &A, other: &B) -> A {
    value.shift_vars(apart_offset(other))
}
