#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use eqglue::clause::Direction;
use eqglue::index::DiscriminationTree;
use eqglue::ordering::{Comparison, OrderingKind, Precedence, TermOrdering};
use eqglue::proof::{Justification, Proof, ProofLine};
use eqglue::terms::{apart_offset, match_term, unify, Equation, Position, Renamable, Substitution, Symbol, Term, Var};

pub fn manifest_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

pub fn bundled_problems() -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(manifest_path("problems"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "p"))
        .collect();
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// Random terms

pub const SIGNATURE: [(&str, usize); 6] = [("a", 0), ("b", 0), ("c", 0), ("f", 1), ("g", 1), ("h", 2)];

pub fn signature() -> Vec<Symbol> {
    SIGNATURE.iter().map(|(n, a)| Symbol::new(*n, *a)).collect()
}

pub fn random_term(rng: &mut ChaCha8Rng, depth: usize, vars: u32) -> Term {
    let leaf = depth == 0 || rng.gen_bool(0.3);
    if leaf {
        if vars > 0 && rng.gen_bool(0.5) {
            return Term::Var(rng.gen_range(0..vars));
        }
        let (name, _) = SIGNATURE[rng.gen_range(0..3)];
        return Term::constant(name);
    }
    let (name, arity) = SIGNATURE[rng.gen_range(3..SIGNATURE.len())];
    Term::app(name, (0..arity).map(|_| random_term(rng, depth - 1, vars)).collect())
}

pub fn random_subst(rng: &mut ChaCha8Rng, vars: u32) -> Substitution {
    Substitution::from_pairs((0..vars).map(|v| (v, random_term(rng, 2, vars))))
}

/// `f(t)`, `g(t)`, `h(t, u)` or `h(u, t)` for a random `u`.
pub fn random_context(rng: &mut ChaCha8Rng, t: Term, vars: u32) -> Term {
    match rng.gen_range(0..4) {
        0 => Term::app("f", vec![t]),
        1 => Term::app("g", vec![t]),
        2 => Term::app("h", vec![t, random_term(rng, 2, vars)]),
        _ => Term::app("h", vec![random_term(rng, 2, vars), t]),
    }
}

// ---------------------------------------------------------------------------
// Ordering laws

pub fn ordering(kind: OrderingKind) -> Box<dyn TermOrdering> {
    kind.build(Precedence::default_for(signature())).unwrap()
}

/// Checks every law on one random sample; returns the violated law.
pub fn ordering_trial(kind: OrderingKind, ord: &dyn TermOrdering, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let vars = 3;
    let s = random_term(rng, 3, vars);
    let t = random_term(rng, 3, vars);
    let u = random_term(rng, 3, vars);
    if ord.greater(&s, &s) {
        return Err(format!("irreflexivity: {s} > {s}"));
    }
    if ord.greater(&s, &t) && ord.greater(&t, &s) {
        return Err(format!("asymmetry: {s} <> {t}"));
    }
    if ord.greater(&s, &t) && ord.greater(&t, &u) && !ord.greater(&s, &u) {
        return Err(format!("transitivity: {s} > {t} > {u}"));
    }
    if ord.greater(&s, &t) {
        let sigma = random_subst(rng, vars);
        let (ss, ts) = (sigma.apply(&s), sigma.apply(&t));
        if !ord.greater(&ss, &ts) {
            return Err(format!("stability: {s} > {t} but not under {sigma}"));
        }
        let mut c_s = s.clone();
        let mut c_t = t.clone();
        for _ in 0..rng.gen_range(1..3) {
            let seed: u64 = rng.gen();
            let mut r1 = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let mut r2 = <ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            c_s = random_context(&mut r1, c_s, vars);
            c_t = random_context(&mut r2, c_t, vars);
        }
        if !ord.greater(&c_s, &c_t) {
            return Err(format!("monotonicity: {s} > {t} but not {c_s} > {c_t}"));
        }
    }
    if matches!(kind, OrderingKind::Kbo | OrderingKind::Lpo) {
        let g1 = random_term(rng, 3, 0);
        let g2 = random_term(rng, 3, 0);
        if g1 != g2 && ord.compare(&g1, &g2) == Comparison::Incomparable {
            return Err(format!("ground totality: {g1} ? {g2}"));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Index completeness

/// One random store and query, compared against brute force.
pub fn index_trial(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let mut tree = DiscriminationTree::new();
    let mut store = Vec::new();
    for i in 0..rng.gen_range(1..30usize) {
        let t = random_term(rng, 3, 3);
        tree.insert(t.clone(), i);
        store.push((t, i));
    }
    // Remove a few to exercise pruning.
    for _ in 0..rng.gen_range(0..3) {
        if store.is_empty() {
            break;
        }
        let k = rng.gen_range(0..store.len());
        let (t, i) = store.swap_remove(k);
        tree.remove(&t, &i).map_err(|e| e.to_string())?;
    }
    let query = random_term(rng, 3, 3);
    // Candidates are confirmed with the exact test before comparing.
    let got: BTreeSet<usize> = tree
        .retrieve_generalizations(&query)
        .into_iter()
        .filter(|(t, _)| match_term(t, &query).is_some())
        .map(|(_, i)| *i)
        .collect();
    let want: BTreeSet<usize> = store
        .iter()
        .filter(|(t, _)| match_term(t, &query).is_some())
        .map(|(_, i)| *i)
        .collect();
    if got != want {
        return Err(format!("generalizations of {query}: {got:?} != {want:?}"));
    }
    // Unification is tried with the stored term renamed apart.
    let shift = apart_offset(&query);
    let got: BTreeSet<usize> = tree
        .retrieve_unifiables(&query)
        .into_iter()
        .filter(|(t, _)| unify(&t.shift_vars(shift), &query).is_some())
        .map(|(_, i)| *i)
        .collect();
    let want: BTreeSet<usize> = store
        .iter()
        .filter(|(t, _)| unify(&t.shift_vars(shift), &query).is_some())
        .map(|(_, i)| *i)
        .collect();
    if got != want {
        return Err(format!("unifiables of {query}: {got:?} != {want:?}"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Random solvable problems

pub type Named = Vec<(String, Equation)>;

/// Axioms over the test signature, and a goal `s = t` where `t` is
/// reached from `s` by rewriting with axiom instances, so the goal follows.
pub fn solvable_problem(rng: &mut ChaCha8Rng) -> (Named, Named) {
    let mut axioms = Vec::new();
    let n = rng.gen_range(1..4);
    while axioms.len() < n {
        let l = random_term(rng, 2, 2);
        let r = random_term(rng, 2, 2);
        // Right-hand variables must occur on the left to keep the axiom usable.
        if l.is_var() || l == r || !r.vars().is_subset(&l.vars()) {
            continue;
        }
        axioms.push((format!("ax{}", axioms.len()), Equation::new(l, r)));
    }
    let start = random_term(rng, 3, 0);
    let mut current = start.clone();
    for _ in 0..rng.gen_range(1..4) {
        let (_, ax) = axioms.choose(rng).unwrap();
        let (from, to) = if rng.gen_bool(0.5) { (&ax.left, &ax.right) } else { (&ax.right, &ax.left) };
        let candidates: Vec<(Position, Substitution)> = current
            .nonvar_positions()
            .into_iter()
            .filter_map(|p| match_term(from, current.subterm_at(&p).unwrap()).map(|s| (p, s)))
            .collect();
        if let Some((p, sigma)) = candidates.choose(rng) {
            current = current.replace_at(p, ground_open_vars(&sigma.apply(to))).unwrap();
        }
    }
    if current == start {
        // Nothing applied: use a ground instance of an axiom side by side.
        let (_, ax) = &axioms[0];
        let g = ax.map_vars(&|_| Term::constant("c"));
        let goal = Equation::new(Term::app("h", vec![start.clone(), g.left]), Term::app("h", vec![start, g.right]));
        return (axioms, vec![("goal".into(), goal)]);
    }
    (axioms, vec![("goal".into(), Equation::new(start, current))])
}

fn ground_open_vars(t: &Term) -> Term {
    t.map_vars(&|_| Term::constant("c"))
}

// ---------------------------------------------------------------------------
// Tampering

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tamper {
    Position,
    Direction,
    Binding,
}

/// Every single-field tampering of the proof that the field admits.
pub fn tamperings(proof: &Proof) -> Vec<(Tamper, Proof)> {
    let mut out = Vec::new();
    for (i, line) in proof.lines.iter().enumerate() {
        match &line.justification {
            Justification::Rewrite {
                direction,
                position,
                subst,
                source,
                by,
            } => {
                let with = |j: Justification| {
                    let mut p = proof.clone();
                    p.lines[i].justification = j;
                    p
                };
                let rebuild = |direction: Direction, position: Position, subst: Substitution| Justification::Rewrite {
                    source: *source,
                    by: *by,
                    direction,
                    position,
                    subst,
                };
                let mut moved = position.0.clone();
                if let Some(last) = moved.last_mut() {
                    *last += 1;
                } else {
                    moved.push(1);
                }
                out.push((Tamper::Position, with(rebuild(*direction, Position(moved), subst.clone()))));
                out.push((Tamper::Direction, with(rebuild(direction.flip(), position.clone(), subst.clone()))));
                if let Some(v) = relevant_binding(proof, i) {
                    let mut s = Substitution::new();
                    for (w, t) in subst.iter() {
                        s.bind(w, if w == v { Term::app("tampered", vec![t.clone()]) } else { t.clone() });
                    }
                    if subst.get(v).is_none() {
                        s.bind(v, Term::constant("tampered"));
                    }
                    out.push((Tamper::Binding, with(rebuild(*direction, position.clone(), s))));
                }
            }
            Justification::Resolution { goal, subst } => {
                if let Some(v) = goal.vars_in_order().first().copied() {
                    let mut s = Substitution::new();
                    for (w, t) in subst.iter() {
                        s.bind(w, if w == v { Term::app("tampered", vec![t.clone()]) } else { t.clone() });
                    }
                    if subst.get(v).is_none() {
                        s.bind(v, Term::constant("tampered"));
                    }
                    let mut p = proof.clone();
                    p.lines[i].justification = Justification::Resolution {
                        goal: goal.clone(),
                        subst: s,
                    };
                    out.push((Tamper::Binding, p));
                }
            }
            Justification::Input(_) => {}
        }
    }
    out
}

/// A variable of the source line or of the shifted equation.
fn relevant_binding(proof: &Proof, i: usize) -> Option<Var> {
    let Justification::Rewrite { source, by, .. } = &proof.lines[i].justification else {
        return None;
    };
    let src = &proof.lines[source - 1].equation;
    let eq = proof.lines[by - 1].equation.shift_vars(apart_offset(src));
    src.vars_in_order().first().or(eq.vars_in_order().first()).copied()
}

// ---------------------------------------------------------------------------
// Hand-written rewrite chains

/// Builds checker-format proofs by naming the source instance; the
/// equation's instance is found by matching.
pub struct Chain {
    pub lines: Vec<ProofLine>,
}

impl Chain {
    pub fn new() -> Self {
        Chain { lines: Vec::new() }
    }

    pub fn input(&mut self, name: &str, eq: Equation) -> usize {
        self.lines.push(ProofLine {
            equation: eq,
            justification: Justification::Input(name.into()),
        });
        self.lines.len()
    }

    /// Rewrites line `src` instantiated by `inst` at `pos`, using line `by`.
    pub fn rewrite(&mut self, src: usize, inst: &[(Var, Term)], by: usize, direction: Direction, pos: &[usize]) -> usize {
        let source = &self.lines[src - 1].equation;
        let shift = apart_offset(source);
        let eq = self.lines[by - 1].equation.shift_vars(shift);
        let inst = Substitution::from_pairs(inst.iter().cloned());
        let instance = source.apply(&inst);
        let position = Position(pos.to_vec());
        let (from, to) = match direction {
            Direction::LeftToRight => (&eq.left, &eq.right),
            Direction::RightToLeft => (&eq.right, &eq.left),
        };
        let at = instance.subterm_at(&position).expect("position exists");
        let mu = match_term(from, at).unwrap_or_else(|| panic!("{from} does not match {at}"));
        let result = instance.replace_at(&position, mu.apply(to)).unwrap();
        let mut subst = inst;
        for (v, t) in mu.iter() {
            subst.bind(v, t.clone());
        }
        self.lines.push(ProofLine {
            equation: result,
            justification: Justification::Rewrite {
                source: src,
                by,
                direction,
                position,
                subst,
            },
        });
        self.lines.len()
    }

    pub fn last(&self) -> &Equation {
        &self.lines.last().unwrap().equation
    }

    pub fn into_proof(self, goal_name: &str, goal: Equation) -> Proof {
        Proof {
            goal_name: goal_name.into(),
            goal,
            lines: self.lines,
        }
    }
}
