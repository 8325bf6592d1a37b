//! Discrimination trees.
//!
//! Terms are keyed by their pre-order symbol string with every variable
//! collapsed to one wildcard. Retrieval is an imperfect filter: callers
//! confirm candidates with `match_term` or `unify`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::terms::{Symbol, Term};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Star,
    Sym(Symbol),
}

#[derive(Debug, Clone)]
struct Node<P> {
    children: BTreeMap<Key, Node<P>>,
    entries: Vec<(Term, P)>,
}

impl<P> Default for Node<P> {
    fn default() -> Self {
        Node {
            children: BTreeMap::new(),
            entries: Vec::new(),
        }
    }
}

impl<P> Node<P> {
    fn is_empty(&self) -> bool {
        self.children.is_empty() && self.entries.is_empty()
    }
}

/// Flattened query: key plus the index just past that subterm.
fn flatten(t: &Term) -> Vec<(Key, usize)> {
    fn go(t: &Term, out: &mut Vec<(Key, usize)>) {
        let at = out.len();
        match t {
            Term::Var(_) => out.push((Key::Star, at + 1)),
            Term::App(f, args) => {
                out.push((Key::Sym(f.clone()), 0));
                args.iter().for_each(|a| go(a, out));
                out[at].1 = out.len();
            }
        }
    }
    let mut out = Vec::new();
    go(t, &mut out);
    out
}

#[derive(Debug, Clone)]
pub struct DiscriminationTree<P> {
    root: Node<P>,
    len: usize,
}

impl<P> Default for DiscriminationTree<P> {
    fn default() -> Self {
        DiscriminationTree {
            root: Node::default(),
            len: 0,
        }
    }
}

impl<P: Clone + PartialEq> DiscriminationTree<P> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, t: Term, payload: P) {
        let mut node = &mut self.root;
        for (key, _) in flatten(&t) {
            node = node.children.entry(key).or_default();
        }
        node.entries.push((t, payload));
        self.len += 1;
    }

    pub fn remove(&mut self, t: &Term, payload: &P) -> Result<()> {
        fn go<P: PartialEq>(node: &mut Node<P>, keys: &[(Key, usize)], t: &Term, p: &P) -> bool {
            match keys.split_first() {
                None => match node.entries.iter().position(|(s, q)| s == t && q == p) {
                    Some(i) => {
                        node.entries.remove(i);
                        true
                    }
                    None => false,
                },
                Some(((key, _), rest)) => {
                    let Some(child) = node.children.get_mut(key) else {
                        return false;
                    };
                    let found = go(child, rest, t, p);
                    if found && child.is_empty() {
                        node.children.remove(key);
                    }
                    found
                }
            }
        }
        if go(&mut self.root, &flatten(t), t, payload) {
            self.len -= 1;
            Ok(())
        } else {
            Err(Error::NotFound)
        }
    }

    /// Stored entries that may be generalizations of `t`.
    pub fn retrieve_generalizations(&self, t: &Term) -> Vec<&(Term, P)> {
        let query = flatten(t);
        let mut out = Vec::new();
        gen_walk(&self.root, &query, 0, &mut out);
        out
    }

    /// Stored entries that may unify with `t`.
    pub fn retrieve_unifiables(&self, t: &Term) -> Vec<&(Term, P)> {
        let query = flatten(t);
        let mut out = Vec::new();
        unif_walk(&self.root, &query, 0, &mut out);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = &(Term, P)> {
        let mut stack = vec![&self.root];
        let mut out = Vec::new();
        while let Some(node) = stack.pop() {
            out.extend(node.entries.iter());
            stack.extend(node.children.values());
        }
        out.into_iter()
    }
}

fn gen_walk<'a, P>(node: &'a Node<P>, q: &[(Key, usize)], i: usize, out: &mut Vec<&'a (Term, P)>) {
    if i == q.len() {
        out.extend(node.entries.iter());
        return;
    }
    let (key, end) = &q[i];
    if let Some(child) = node.children.get(&Key::Star) {
        gen_walk(child, q, *end, out);
    }
    if let Key::Sym(_) = key {
        if let Some(child) = node.children.get(key) {
            gen_walk(child, q, i + 1, out);
        }
    }
}

fn unif_walk<'a, P>(node: &'a Node<P>, q: &[(Key, usize)], i: usize, out: &mut Vec<&'a (Term, P)>) {
    if i == q.len() {
        out.extend(node.entries.iter());
        return;
    }
    let (key, end) = &q[i];
    match key {
        Key::Star => {
            let mut skipped = Vec::new();
            skip_term(node, 1, &mut skipped);
            for n in skipped {
                unif_walk(n, q, i + 1, out);
            }
        }
        Key::Sym(_) => {
            if let Some(child) = node.children.get(&Key::Star) {
                unif_walk(child, q, *end, out);
            }
            if let Some(child) = node.children.get(key) {
                unif_walk(child, q, i + 1, out);
            }
        }
    }
}

/// Nodes reached after skipping `pending` complete stored terms.
fn skip_term<'a, P>(node: &'a Node<P>, pending: usize, out: &mut Vec<&'a Node<P>>) {
    if pending == 0 {
        out.push(node);
        return;
    }
    for (key, child) in &node.children {
        let arity = match key {
            Key::Star => 0,
            Key::Sym(f) => f.arity(),
        };
        skip_term(child, pending - 1 + arity, out);
    }
}
