use std::collections::BTreeMap;
use std::fmt;

use super::{Term, Var};

/// Finite map from variables to terms. Identity bindings are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    bindings: BTreeMap<Var, Term>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, Term)>) -> Self {
        let mut s = Self::new();
        for (v, t) in pairs {
            s.bind(v, t);
        }
        s
    }

    /// Adds a binding. Binding a variable to itself removes it.
    pub fn bind(&mut self, v: Var, t: Term) {
        if t == Term::Var(v) {
            self.bindings.remove(&v);
        } else {
            self.bindings.insert(v, t);
        }
    }

    pub fn get(&self, v: Var) -> Option<&Term> {
        self.bindings.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, &Term)> {
        self.bindings.iter().map(|(v, t)| (*v, t))
    }

    pub fn domain(&self) -> impl Iterator<Item = Var> + '_ {
        self.bindings.keys().copied()
    }

    /// Homomorphic replacement of bound variables.
    pub fn apply(&self, t: &Term) -> Term {
        if self.is_empty() {
            return t.clone();
        }
        match t {
            Term::Var(v) => self.bindings.get(v).cloned().unwrap_or_else(|| t.clone()),
            Term::App(sym, args) => {
                Term::App(sym.clone(), args.iter().map(|a| self.apply(a)).collect())
            }
        }
    }

    pub fn is_idempotent(&self) -> bool {
        self.bindings
            .values()
            .all(|t| self.bindings.keys().all(|v| !t.occurs(*v)))
    }

    /// Keeps only bindings whose variable satisfies `keep`.
    pub fn restrict(&self, keep: impl Fn(Var) -> bool) -> Substitution {
        Substitution {
            bindings: self
                .bindings
                .iter()
                .filter(|(v, _)| keep(**v))
                .map(|(v, t)| (*v, t.clone()))
                .collect(),
        }
    }

    /// Renames the bound variables (not the range) through `f`.
    pub fn map_domain(&self, f: impl Fn(Var) -> Var) -> Substitution {
        Substitution::from_pairs(self.bindings.iter().map(|(v, t)| (f(*v), t.clone())))
    }
}

/// `compose(sigma, tau)` applies `sigma` first, then `tau`.
pub fn compose(sigma: &Substitution, tau: &Substitution) -> Substitution {
    let mut out = Substitution::new();
    for (v, t) in sigma.iter() {
        out.bind(v, tau.apply(t));
    }
    for (v, t) in tau.iter() {
        if sigma.get(v).is_none() {
            out.bind(v, t.clone());
        }
    }
    out
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "X{v} := {t}")?;
        }
        f.write_str("}")
    }
}
